use super::{Partition, SpaceError};

/// Finitely many dates, each with a partition refining the previous ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    times: Vec<String>,
    partitions: Vec<Partition>,
}

impl Filtration {
    pub fn new(times: Vec<String>, partitions: Vec<Partition>) -> Result<Self, SpaceError> {
        if times.is_empty() || times.len() != partitions.len() {
            return Err(SpaceError::BadFiltration { times: times.len(), partitions: partitions.len() });
        }
        for w in 0..partitions.len() - 1 {
            if !partitions[w + 1].is_refinement_of(&partitions[w])? {
                return Err(SpaceError::NotRefining { coarse: times[w].clone(), fine: times[w + 1].clone() });
            }
        }
        Ok(Filtration { times, partitions })
    }

    /// Dates labeled `t0, t1, …`.
    pub fn from_partitions(partitions: Vec<Partition>) -> Result<Self, SpaceError> {
        let times = (0..partitions.len()).map(|i| format!("t{i}")).collect();
        Self::new(times, partitions)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn at(&self, t: usize) -> &Partition {
        &self.partitions[t]
    }

    pub fn index_of(&self, time: &str) -> Option<usize> {
        self.times.iter().position(|t| t == time)
    }

    pub fn num_atoms(&self) -> usize {
        self.partitions[0].num_atoms()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_order_is_enforced() {
        let f0 = Partition::trivial(4);
        let f1 = Partition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let f2 = Partition::discrete(4);
        assert!(Filtration::from_partitions(vec![f0.clone(), f1.clone(), f2.clone()]).is_ok());
        assert_eq!(
            Filtration::from_partitions(vec![f0, f2, f1]),
            Err(SpaceError::NotRefining { coarse: "t1".into(), fine: "t2".into() })
        );
        assert!(Filtration::from_partitions(vec![]).is_err());
    }
}
