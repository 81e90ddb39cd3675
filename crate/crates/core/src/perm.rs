//! Permutations stored as image tables.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// A bijection of `0..degree`.
///
/// Multiplication is left to right: `(a * b).image(x) == b.image(a.image(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x + 1,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(Error::RepeatedPoint(x + 1));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if seen[x] {
                    return Err(Error::RepeatedPoint(x + 1));
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation over `1..=degree`, e.g. `"(1 2 3)(4 5)"`.
    /// `"()"` is the identity. Commas may separate points.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty string".to_string()));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(String::from(rest)))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed cycle".to_string()))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::Parse("nested parenthesis".to_string()));
            }
            let mut cycle = Vec::new();
            for tok in inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// `self` followed by `other`. Panics on a degree mismatch; see
    /// [`Permutation::product`] for the checked form.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn product(a: &Permutation, b: &Permutation) -> Result<Permutation> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(a.then(b))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// `h^-1 * self * h`, so that `x^h` is mapped to `(x^self)^h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[h.image(x)] = h.images[y as usize];
        }
        Permutation { images }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths including fixed points, in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_type()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Pads with fixed points up to `degree`.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Acts as `self` on `offset..offset + self.degree()` and fixes every
    /// other point of `0..degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (x, &y) in self.images.iter().enumerate() {
            images[offset + x] = offset as u32 + y;
        }
        Permutation { images }
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(p("()", 3).is_identity());
        assert_eq!(p("(1 2 3)", 3).images(), &[1, 2, 0]);
        // external images [2,1,4,5,3]
        assert_eq!(p("(1 2)(3 4 5)", 5).images(), &[1, 0, 3, 4, 2]);
        assert_eq!(p("(1,2)(3,4,5)", 5), p("(1 2)(3 4 5)", 5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("(1 2", 3),
            Err(Error::Parse(_))
        ));
        assert!(matches!(Permutation::parse("1 2", 3), Err(Error::Parse(_))));
        assert!(matches!(
            Permutation::parse("(1 x)", 3),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            Permutation::parse("(1 4)", 3),
            Err(Error::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::parse("(1 2)(2 3)", 3),
            Err(Error::RepeatedPoint(2))
        );
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn left_to_right_convention() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        // 1 -a-> 2 -b-> 3
        let ab = &a * &b;
        assert_eq!(ab.image(0), 2);
        assert_eq!(ab, p("(1 3 2)", 3));
        assert_eq!(&b * &a, p("(1 2 3)", 3));
        let c = p("(1 3)", 3);
        assert_eq!((&ab * &c), (&a * &(&b * &c)));
    }

    #[test]
    fn product_examples() {
        assert!((&p("(1 2)", 2) * &p("(1 2)", 2)).is_identity());
        assert_eq!(p("(1 2 3)", 3).sign(), 1);
        assert_eq!(p("(1 2)", 3).sign(), -1);
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), BigUint::from(6u32));
        assert_eq!(
            Permutation::product(&p("(1 2)", 2), &p("(1 2)", 3)),
            Err(Error::DegreeMismatch(2, 3))
        );
    }

    #[test]
    fn display_round_trip() {
        let x = p("(2 5)(1 3 4)", 6);
        assert_eq!(format!("{x}"), "(1 3 4)(2 5)");
        assert_eq!(p(&format!("{x}"), 6), x);
        assert_eq!(format!("{}", Permutation::identity(4)), "()");
    }

    #[test]
    fn conjugation_and_powers() {
        let g = p("(1 2 3 4)", 4);
        let h = p("(1 2)", 4);
        assert_eq!(g.conjugate_by(&h), &(&h.inverse() * &g) * &h);
        assert!(g.pow(4).is_identity());
        assert_eq!(g.pow(3), g.inverse());
        let c = Permutation::commutator(&g, &h);
        assert_eq!(c, &(&(&g.inverse() * &h.inverse()) * &g) * &h);
    }
}
