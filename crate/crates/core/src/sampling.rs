//! Seeded case generation for the falsification checkers.
//!
//! Each property draws from its own ChaCha stream keyed by the run seed and
//! the property name, so adding a check never perturbs the cases of another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ext::ExtReal;
use num_rational::BigRational;

use crate::space::{Event, Filtration, Partition, ProbabilitySpace, RandomVariable, DEFAULT_EVENT_CAP};

pub const DEFAULT_SAMPLES: usize = 500;

/// Knobs shared by every checker.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    /// Cell-count bound for exhaustive event enumeration.
    pub cap: usize,
    /// Values used for grid sweeps and mixed into random draws.
    pub grid: Vec<ExtReal>,
    /// Unary properties enumerate the whole grid when `grid.len()^atoms` is at most this.
    pub exhaustive_limit: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            cap: DEFAULT_EVENT_CAP,
            grid: default_grid(),
            exhaustive_limit: 4096,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig { seed, ..Self::default() }
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn sampler(&self, property: &str) -> Sampler {
        Sampler::new(self.seed, property, self.grid.clone())
    }

    pub fn finite_grid(&self) -> Vec<ExtReal> {
        self.grid.iter().filter(|v| v.is_finite()).cloned().collect()
    }
}

/// `{−∞, −2, −1, 0, 1/2, 1, 2, +∞}`.
pub fn default_grid() -> Vec<ExtReal> {
    vec![
        ExtReal::NegInf,
        ExtReal::from_int(-2),
        ExtReal::from_int(-1),
        ExtReal::zero(),
        ExtReal::ratio(1, 2),
        ExtReal::from_int(1),
        ExtReal::from_int(2),
        ExtReal::PosInf,
    ]
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub struct Sampler {
    rng: ChaCha8Rng,
    grid: Vec<ExtReal>,
    finite_grid: Vec<ExtReal>,
}

const DENOMINATORS: [i64; 5] = [1, 2, 3, 4, 6];

impl Sampler {
    pub fn new(seed: u64, property: &str, grid: Vec<ExtReal>) -> Self {
        let finite_grid: Vec<ExtReal> = grid.iter().filter(|v| v.is_finite()).cloned().collect();
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed ^ fnv1a(property)), grid, finite_grid }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn rational(&mut self, lo: i64, hi: i64) -> ExtReal {
        let q = DENOMINATORS[self.rng.gen_range(0..DENOMINATORS.len())];
        let p = self.rng.gen_range(lo * q..=hi * q);
        ExtReal::ratio(p, q)
    }

    /// Half grid values, half small random rationals.
    pub fn value(&mut self, finite: bool) -> ExtReal {
        let pool = if finite { &self.finite_grid } else { &self.grid };
        if !pool.is_empty() && self.rng.gen_bool(0.5) {
            pool[self.rng.gen_range(0..pool.len())].clone()
        } else {
            self.rational(-6, 6)
        }
    }

    pub fn variable(&mut self, n: usize, finite: bool) -> RandomVariable {
        RandomVariable::new((0..n).map(|_| self.value(finite)).collect())
    }

    pub fn nonneg_variable(&mut self, n: usize, finite: bool) -> RandomVariable {
        self.variable(n, finite).abs()
    }

    pub fn measurable(&mut self, h: &Partition, finite: bool) -> RandomVariable {
        let per_cell: Vec<ExtReal> = (0..h.num_cells()).map(|_| self.value(finite)).collect();
        h.lift(&per_cell)
    }

    /// ℋ-measurable weights in `[0, 1]`.
    pub fn unit_alpha(&mut self, h: &Partition) -> RandomVariable {
        let per_cell: Vec<ExtReal> = (0..h.num_cells())
            .map(|_| match self.rng.gen_range(0..4) {
                0 => ExtReal::zero(),
                1 => ExtReal::one(),
                _ => {
                    let q = self.rng.gen_range(2..=8);
                    ExtReal::ratio(self.rng.gen_range(0..=q), q)
                }
            })
            .collect();
        h.lift(&per_cell)
    }

    /// Finite ℋ-measurable weights `≥ 0`.
    pub fn pos_alpha(&mut self, h: &Partition) -> RandomVariable {
        let per_cell: Vec<ExtReal> = (0..h.num_cells())
            .map(|_| if self.rng.gen_bool(0.15) { ExtReal::zero() } else { self.rational(0, 4) })
            .collect();
        h.lift(&per_cell)
    }

    /// Finite ℋ-measurable weights of either sign.
    pub fn signed_alpha(&mut self, h: &Partition) -> RandomVariable {
        let per_cell: Vec<ExtReal> = (0..h.num_cells())
            .map(|_| if self.rng.gen_bool(0.15) { ExtReal::zero() } else { self.rational(-4, 4) })
            .collect();
        h.lift(&per_cell)
    }

    /// Strictly positive rational weights with small denominators.
    pub fn space(&mut self, n: usize) -> ProbabilitySpace {
        let raw: Vec<i64> = (0..n).map(|_| self.rng.gen_range(1..=6)).collect();
        let total: i64 = raw.iter().sum();
        ProbabilitySpace::with_probs(raw.iter().map(|&w| BigRational::new(w.into(), total.into())).collect())
            .expect("positive weights normalized")
    }

    /// Splits each cell into at most `max_split` nonempty pieces.
    pub fn refinement(&mut self, p: &Partition, max_split: usize) -> Partition {
        let mut ids = vec![0usize; p.num_atoms()];
        let mut next = 0;
        for cell in p.cells() {
            let k = self.rng.gen_range(1..=max_split.min(cell.len()).max(1));
            let mut pieces: Vec<usize> =
                (0..cell.len()).map(|i| if i < k { i } else { self.rng.gen_range(0..k) }).collect();
            for i in (1..pieces.len()).rev() {
                let j = self.rng.gen_range(0..=i);
                pieces.swap(i, j);
            }
            for (&a, &piece) in cell.iter().zip(&pieces) {
                ids[a] = next + piece;
            }
            next += k;
        }
        Partition::from_assignment(&ids)
    }

    /// `periods + 1` partitions starting from the trivial one.
    pub fn filtration(&mut self, n: usize, periods: usize) -> Filtration {
        let mut parts = vec![Partition::trivial(n)];
        for _ in 0..periods {
            let next = self.refinement(parts.last().unwrap(), 2);
            parts.push(next);
        }
        Filtration::from_partitions(parts).expect("refinements are nested")
    }

    pub fn event(&mut self, h: &Partition) -> Event {
        let k = h.num_cells();
        let cells: Vec<bool> = (0..k).map(|_| self.rng.gen_bool(0.5)).collect();
        Event::from_mask((0..h.num_atoms()).map(|a| cells[h.cell_of(a)]).collect())
    }
}

/// Every vector in `grid^n`, in odometer order. Returns `None` when the count
/// would exceed `limit`.
pub fn grid_variables(n: usize, grid: &[ExtReal], limit: usize) -> Option<Vec<RandomVariable>> {
    let total = (grid.len() as u128).checked_pow(n as u32)?;
    if total > limit as u128 || grid.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; n];
    loop {
        out.push(RandomVariable::new(idx.iter().map(|&i| grid[i].clone()).collect()));
        let mut pos = 0;
        loop {
            if pos == n {
                return Some(out);
            }
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_property_keyed() {
        let draw = |prop: &str| {
            let mut s = Sampler::new(7, prop, default_grid());
            (0..20).map(|_| s.value(false)).collect::<Vec<_>>()
        };
        assert_eq!(draw("a"), draw("a"));
        assert_ne!(draw("a"), draw("b"));
    }

    #[test]
    fn grid_enumeration_counts() {
        let g = default_grid();
        assert_eq!(grid_variables(3, &g, 1000).unwrap().len(), 512);
        assert!(grid_variables(4, &g, 1000).is_none());
        let all = grid_variables(2, &g[..2], 10).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn generated_filtrations_refine() {
        let mut s = Sampler::new(3, "filtration", default_grid());
        for n in 1..=6 {
            let f = s.filtration(n, 3);
            assert_eq!(f.len(), 4);
            assert_eq!(f.at(0).num_cells(), 1);
            assert_eq!(s.space(n).len(), n);
        }
    }

    #[test]
    fn alphas_respect_their_ranges() {
        let h = Partition::from_assignment(&[0, 0, 1, 1, 2]);
        let mut s = Sampler::new(1, "alpha", default_grid());
        for _ in 0..200 {
            let u = s.unit_alpha(&h);
            assert!(h.is_measurable(&u));
            assert!(u.values().iter().all(|v| *v >= ExtReal::zero() && *v <= ExtReal::one()));
            let p = s.pos_alpha(&h);
            assert!(p.is_nonneg() && p.is_finite() && h.is_measurable(&p));
            assert!(s.signed_alpha(&h).is_finite());
        }
    }
}
