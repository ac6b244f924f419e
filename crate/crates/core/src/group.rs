//! A minimal group interface and machine-checked products of commutators.

use alloc::vec::Vec;
use core::fmt::Debug;

use crate::words::ReducedWord;

pub trait Group {
    type Element: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;

    /// `x y x^-1 y^-1`.
    fn commutator(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        let xy = self.mul(x, y);
        let xyx = self.mul(&xy, &self.inv(x));
        self.mul(&xyx, &self.inv(y))
    }

    fn pow(&self, a: &Self::Element, n: i64) -> Self::Element {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }
}

/// The free group of a fixed rank acting on [`ReducedWord`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl Group for FreeGroup {
    type Element = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity(self.rank)
    }

    /// Panics on a rank mismatch.
    fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
        assert!(a.rank() == self.rank && b.rank() == self.rank, "rank mismatch");
        a.mul_unchecked(b)
    }

    fn inv(&self, a: &ReducedWord) -> ReducedWord {
        a.inverse()
    }

    fn commutator(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        assert!(x.rank() == self.rank && y.rank() == self.rank, "rank mismatch");
        crate::words::commutator_unchecked(x, y)
    }

    fn pow(&self, a: &ReducedWord, n: i64) -> ReducedWord {
        a.pow(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("product of commutators does not evaluate to the target")]
    Mismatch,
}

/// An identity `target = [x_1, y_1] [x_2, y_2] ... [x_k, y_k]`, verified by
/// exact evaluation whenever it is constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<E> {
    pairs: Vec<(E, E)>,
    target: E,
}

impl<E: Clone + PartialEq + Debug> Certificate<E> {
    pub fn new<G: Group<Element = E>>(group: &G, pairs: Vec<(E, E)>, target: E) -> Result<Self, CertificateError> {
        let cert = Certificate { pairs, target };
        if cert.verify(group) {
            Ok(cert)
        } else {
            Err(CertificateError::Mismatch)
        }
    }

    pub fn evaluate<G: Group<Element = E>>(&self, group: &G) -> E {
        self.pairs
            .iter()
            .fold(group.identity(), |acc, (x, y)| group.mul(&acc, &group.commutator(x, y)))
    }

    pub fn verify<G: Group<Element = E>>(&self, group: &G) -> bool {
        self.evaluate(group) == self.target
    }

    pub fn pairs(&self) -> &[(E, E)] {
        &self.pairs
    }

    pub fn target(&self) -> &E {
        &self.target
    }

    /// Number of commutator factors.
    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    /// Unverified; for tamper tests.
    #[doc(hidden)]
    pub fn into_parts(self) -> (Vec<(E, E)>, E) {
        (self.pairs, self.target)
    }
}

/// Certificates in a free group.
pub type CommutatorCertificate = Certificate<ReducedWord>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_checks_on_construction() {
        let f = FreeGroup { rank: 2 };
        let a = ReducedWord::parse("a", 2).unwrap();
        let b = ReducedWord::parse("b", 2).unwrap();
        let t = ReducedWord::parse("abAB", 2).unwrap();
        let c = Certificate::new(&f, alloc::vec![(a.clone(), b.clone())], t.clone()).unwrap();
        assert_eq!(c.genus(), 1);
        assert_eq!(
            Certificate::new(&f, alloc::vec![(b, a)], t).unwrap_err(),
            CertificateError::Mismatch
        );
    }

    #[test]
    fn default_pow_matches_word_pow() {
        struct Plain(FreeGroup);
        impl Group for Plain {
            type Element = ReducedWord;
            fn identity(&self) -> ReducedWord {
                self.0.identity()
            }
            fn mul(&self, a: &ReducedWord, b: &ReducedWord) -> ReducedWord {
                self.0.mul(a, b)
            }
            fn inv(&self, a: &ReducedWord) -> ReducedWord {
                self.0.inv(a)
            }
        }
        let g = Plain(FreeGroup { rank: 2 });
        let u = ReducedWord::parse("abA", 2).unwrap();
        for n in -4..=4 {
            assert_eq!(g.pow(&u, n), u.pow(n));
        }
        let v = ReducedWord::parse("bb", 2).unwrap();
        assert_eq!(g.commutator(&u, &v), u.commutator(&v).unwrap());
    }
}
