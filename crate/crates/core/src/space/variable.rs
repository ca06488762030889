use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::ext::ExtReal;

/// An atom-indexed vector of extended reals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RandomVariable(Vec<ExtReal>);

impl RandomVariable {
    pub fn new(values: Vec<ExtReal>) -> Self {
        RandomVariable(values)
    }

    pub fn constant(n: usize, v: ExtReal) -> Self {
        RandomVariable(vec![v; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self::constant(n, ExtReal::zero())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RandomVariable(values.iter().map(|&v| ExtReal::from_int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &ExtReal {
        &self.0[i]
    }

    pub fn into_values(self) -> Vec<ExtReal> {
        self.0
    }

    pub fn map(&self, f: impl Fn(&ExtReal) -> ExtReal) -> Self {
        RandomVariable(self.0.iter().map(f).collect())
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&ExtReal, &ExtReal) -> ExtReal) -> Self {
        assert_eq!(self.len(), other.len(), "random variables on different spaces");
        RandomVariable(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(ExtReal::is_finite)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|v| v.signum() >= 0)
    }

    /// Atomwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn ge(&self, other: &Self) -> bool {
        other.le(self)
    }

    pub fn max(&self, other: &Self) -> Self {
        self.zip_with(other, ExtReal::max_of)
    }

    pub fn min(&self, other: &Self) -> Self {
        self.zip_with(other, ExtReal::min_of)
    }

    pub fn pos_part(&self) -> Self {
        self.map(ExtReal::pos_part)
    }

    pub fn neg_part(&self) -> Self {
        self.map(ExtReal::neg_part)
    }

    pub fn abs(&self) -> Self {
        self.map(ExtReal::abs)
    }

    pub fn scale(&self, alpha: &ExtReal) -> Self {
        self.map(|v| alpha * v)
    }

    /// `X · 1_H`: the value of `X` on `H`, zero elsewhere.
    pub fn restrict(&self, event: &Event) -> Self {
        assert_eq!(self.len(), event.len(), "event on a different space");
        RandomVariable(
            self.0.iter().zip(&event.0).map(|(v, &inside)| if inside { v.clone() } else { ExtReal::zero() }).collect(),
        )
    }

    /// `X 1_H + Y 1_{H^c}`.
    pub fn patch(&self, other: &Self, event: &Event) -> Self {
        RandomVariable(
            (0..self.len()).map(|i| if event.contains(i) { self.0[i].clone() } else { other.0[i].clone() }).collect(),
        )
    }

    /// Atoms where `self` and `other` differ.
    pub fn disagreement(&self, other: &Self) -> Event {
        Event(self.0.iter().zip(&other.0).map(|(a, b)| a != b).collect())
    }
}

impl fmt::Display for RandomVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl Neg for &RandomVariable {
    type Output = RandomVariable;
    fn neg(self) -> RandomVariable {
        self.map(|v| -v)
    }
}

impl Neg for RandomVariable {
    type Output = RandomVariable;
    fn neg(self) -> RandomVariable {
        -&self
    }
}

macro_rules! pointwise {
    ($tr:ident, $m:ident) => {
        impl $tr for &RandomVariable {
            type Output = RandomVariable;
            fn $m(self, rhs: &RandomVariable) -> RandomVariable {
                self.zip_with(rhs, |a, b| a.$m(b))
            }
        }
        impl $tr for RandomVariable {
            type Output = RandomVariable;
            fn $m(self, rhs: RandomVariable) -> RandomVariable {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RandomVariable> for RandomVariable {
            type Output = RandomVariable;
            fn $m(self, rhs: &RandomVariable) -> RandomVariable {
                (&self).$m(rhs)
            }
        }
    };
}

pointwise!(Add, add);
pointwise!(Sub, sub);
pointwise!(Mul, mul);

/// A subset of the atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(pub(crate) Vec<bool>);

/// Serialized as the sorted list of member atom indices.
impl Serialize for Event {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.atoms())
    }
}

impl Event {
    pub fn empty(n: usize) -> Self {
        Event(vec![false; n])
    }

    pub fn full(n: usize) -> Self {
        Event(vec![true; n])
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        Event(mask)
    }

    pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; n];
        for a in atoms {
            mask[a] = true;
        }
        Event(mask)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.0[atom]
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn complement(&self) -> Self {
        Event(self.0.iter().map(|b| !b).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        Event(self.0.iter().zip(&other.0).map(|(a, b)| *a || *b).collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Event(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }

    /// The indicator `1_H` as a random variable.
    pub fn indicator(&self) -> RandomVariable {
        RandomVariable(self.0.iter().map(|&b| if b { ExtReal::one() } else { ExtReal::zero() }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restrict_keeps_values_on_the_event() {
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let h = Event::from_atoms(4, [0, 1]);
        assert_eq!(x.restrict(&h), RandomVariable::from_ints(&[1, 3, 0, 0]));
        assert_eq!(x.restrict(&Event::full(4)), x);

        let y = RandomVariable::new(vec![
            ExtReal::PosInf,
            ExtReal::from_int(1),
            ExtReal::from_int(2),
            ExtReal::from_int(3),
        ]);
        assert_eq!(y.restrict(&Event::empty(4)), RandomVariable::zeros(4));
    }

    #[test]
    fn patch_combines_on_complementary_events() {
        let x = RandomVariable::from_ints(&[1, 1, 1, 1]);
        let y = RandomVariable::from_ints(&[2, 2, 2, 2]);
        let h = Event::from_atoms(4, [1, 3]);
        assert_eq!(x.patch(&y, &h), RandomVariable::from_ints(&[2, 1, 2, 1]));
    }

    #[test]
    fn event_algebra() {
        let a = Event::from_atoms(4, [0, 1]);
        let b = Event::from_atoms(4, [1, 2]);
        assert_eq!(a.union(&b), Event::from_atoms(4, [0, 1, 2]));
        assert_eq!(a.intersection(&b), Event::from_atoms(4, [1]));
        assert_eq!(a.complement(), Event::from_atoms(4, [2, 3]));
        assert_eq!(a.indicator(), RandomVariable::from_ints(&[1, 1, 0, 0]));
    }
}
