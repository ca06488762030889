use super::{Event, RandomVariable, SpaceError};
use crate::ext::ExtReal;

/// Default bound on the number of cells for exhaustive event enumeration.
pub const DEFAULT_EVENT_CAP: usize = 20;

/// A σ-algebra on a finite space, stored as the partition of atoms it
/// generates. Cells are kept in canonical order (sorted atoms, cells ordered
/// by their smallest atom) so structural equality is σ-algebra equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self, SpaceError> {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (k, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(SpaceError::NotAPartition(format!("cell {k} is empty")));
            }
            for &a in cell {
                if a >= n {
                    return Err(SpaceError::NotAPartition(format!("atom {a} out of range")));
                }
                if owner[a].replace(k).is_some() {
                    return Err(SpaceError::NotAPartition(format!("atom {a} appears in more than one cell")));
                }
            }
        }
        if let Some(a) = owner.iter().position(Option::is_none) {
            return Err(SpaceError::NotAPartition(format!("atom {a} is not covered")));
        }
        let assignment: Vec<usize> = owner.into_iter().map(Option::unwrap).collect();
        Ok(Self::from_assignment(&assignment))
    }

    /// Builds the partition grouping atoms with equal block ids.
    pub fn from_assignment(ids: &[usize]) -> Self {
        let mut relabel: Vec<(usize, usize)> = Vec::new();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut cell_of = Vec::with_capacity(ids.len());
        for (atom, &id) in ids.iter().enumerate() {
            let k = match relabel.iter().find(|(old, _)| *old == id) {
                Some(&(_, k)) => k,
                None => {
                    relabel.push((id, cells.len()));
                    cells.push(Vec::new());
                    cells.len() - 1
                }
            };
            cells[k].push(atom);
            cell_of.push(k);
        }
        Partition { cells, cell_of }
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    /// Every partition of an `n`-atom space, via restricted growth strings.
    pub fn enumerate_all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == rgs.len() {
                out.push(Partition::from_assignment(rgs));
                return;
            }
            for b in 0..=max + 1 {
                rgs[i] = b;
                rec(i + 1, max.max(b), rgs, out);
            }
        }
        if n == 0 {
            return out;
        }
        rec(1, 0, &mut rgs, &mut out);
        out
    }

    pub fn num_atoms(&self) -> usize {
        self.cell_of.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, atom: usize) -> usize {
        self.cell_of[atom]
    }

    pub fn cell_event(&self, k: usize) -> Event {
        Event::from_atoms(self.num_atoms(), self.cells[k].iter().copied())
    }

    /// True iff every cell of `self` lies inside one cell of `coarse`.
    pub fn is_refinement_of(&self, coarse: &Partition) -> Result<bool, SpaceError> {
        if self.num_atoms() != coarse.num_atoms() {
            return Err(SpaceError::Mismatch(self.num_atoms(), coarse.num_atoms()));
        }
        Ok(self.cells.iter().all(|cell| {
            let k = coarse.cell_of(cell[0]);
            cell.iter().all(|&a| coarse.cell_of(a) == k)
        }))
    }

    /// The event generated by the cells whose bit is set in `mask`.
    pub fn union_of_cells(&self, mask: u64) -> Event {
        Event(self.cell_of.iter().map(|&k| mask >> k & 1 == 1).collect())
    }

    /// All `2^k` unions of cells, `∅` first and `Ω` last.
    pub fn enumerate_events(&self, cap: usize) -> Result<Vec<Event>, SpaceError> {
        let k = self.num_cells();
        if k > cap || k >= 64 {
            return Err(SpaceError::CapExceeded(k, cap));
        }
        Ok((0..1u64 << k).map(|m| self.union_of_cells(m)).collect())
    }

    pub fn contains_event(&self, event: &Event) -> bool {
        self.cells.iter().all(|cell| cell.iter().all(|&a| event.contains(a) == event.contains(cell[0])))
    }

    /// True iff `x` is constant on every cell.
    pub fn is_measurable(&self, x: &RandomVariable) -> bool {
        self.cells.iter().all(|cell| cell.iter().all(|&a| x.get(a) == x.get(cell[0])))
    }

    /// Cell-constant variable from one value per cell.
    pub fn lift(&self, per_cell: &[ExtReal]) -> RandomVariable {
        assert_eq!(per_cell.len(), self.num_cells());
        RandomVariable::new(self.cell_of.iter().map(|&k| per_cell[k].clone()).collect())
    }

    /// Applies `f` to the values of `x` on each cell and broadcasts the result.
    pub fn reduce_cells<F>(&self, x: &RandomVariable, f: F) -> RandomVariable
    where
        F: Fn(&[usize], &RandomVariable) -> ExtReal,
    {
        let per_cell: Vec<ExtReal> = self.cells.iter().map(|c| f(c, x)).collect();
        self.lift(&per_cell)
    }

    /// Value of a measurable variable on each cell.
    pub fn cell_values(&self, x: &RandomVariable) -> Vec<ExtReal> {
        self.cells.iter().map(|c| x.get(c[0]).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cells: &[&[usize]]) -> Partition {
        Partition::from_cells(n, cells.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn refinement_examples() {
        let fine = p(4, &[&[0], &[1], &[2, 3]]);
        let coarse = p(4, &[&[0, 1], &[2, 3]]);
        assert!(fine.is_refinement_of(&coarse).unwrap());
        assert!(coarse.is_refinement_of(&coarse).unwrap());
        let crossed = p(4, &[&[0, 2], &[1, 3]]);
        assert!(!crossed.is_refinement_of(&coarse).unwrap());
        assert_eq!(fine.is_refinement_of(&Partition::trivial(3)), Err(SpaceError::Mismatch(4, 3)));
    }

    #[test]
    fn canonical_form_ignores_input_order() {
        assert_eq!(p(4, &[&[3, 2], &[1, 0]]), p(4, &[&[0, 1], &[2, 3]]));
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::from_cells(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_cells(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::from_cells(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn event_counts() {
        assert_eq!(p(4, &[&[0, 1], &[2, 3]]).enumerate_events(20).unwrap().len(), 4);
        let trivial = Partition::trivial(4).enumerate_events(20).unwrap();
        assert_eq!(trivial, vec![Event::empty(4), Event::full(4)]);
        assert_eq!(Partition::discrete(5).enumerate_events(4), Err(SpaceError::CapExceeded(5, 4)));
    }

    #[test]
    fn three_cells_give_eight_unions() {
        let h = p(5, &[&[0, 3], &[1], &[2, 4]]);
        let events = h.enumerate_events(20).unwrap();
        assert_eq!(events.len(), 8);
        // brute force: every subset of atoms that is a union of cells
        let mut expected = Vec::new();
        for m in 0u32..32 {
            let e = Event::from_mask((0..5).map(|i| m >> i & 1 == 1).collect());
            if h.cells().iter().all(|c| c.iter().all(|&a| e.contains(a) == e.contains(c[0]))) {
                expected.push(e);
            }
        }
        let mut got = events.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn measurability() {
        let h = p(4, &[&[0, 1], &[2, 3]]);
        assert!(h.is_measurable(&RandomVariable::from_ints(&[3, 3, 6, 6])));
        assert!(!h.is_measurable(&RandomVariable::from_ints(&[1, 3, 2, 6])));
        assert!(Partition::discrete(4).is_measurable(&RandomVariable::from_ints(&[1, 3, 2, 6])));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| Partition::enumerate_all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }
}
