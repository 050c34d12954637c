//! Cartan types, their parsing, and the symmetrized Cartan form.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{frac, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// A simple (connected) Cartan type such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.admits(rank) {
            return Err(Error::BadRank {
                family: family.letter(),
                rank,
            });
        }
        Ok(Self { family, rank })
    }

    /// Symmetrized Cartan matrix in Bourbaki numbering, long roots of squared length 2.
    pub fn gram(&self) -> Matrix {
        let n = self.rank;
        let mut g = Matrix::zeros(n, n);
        let link = |g: &mut Matrix, i: usize, j: usize, v: Q| {
            g.set(i, j, v.clone());
            g.set(j, i, v);
        };
        match self.family {
            Family::A => {
                (0..n).for_each(|i| g.set(i, i, q(2)));
                (1..n).for_each(|i| link(&mut g, i - 1, i, q(-1)));
            }
            Family::B => {
                (0..n - 1).for_each(|i| g.set(i, i, q(2)));
                g.set(n - 1, n - 1, q(1));
                (1..n).for_each(|i| link(&mut g, i - 1, i, q(-1)));
            }
            Family::C => {
                (0..n - 1).for_each(|i| g.set(i, i, q(1)));
                g.set(n - 1, n - 1, q(2));
                (1..n - 1).for_each(|i| link(&mut g, i - 1, i, frac(-1, 2)));
                link(&mut g, n - 2, n - 1, q(-1));
            }
            Family::D => {
                (0..n).for_each(|i| g.set(i, i, q(2)));
                (1..n - 1).for_each(|i| link(&mut g, i - 1, i, q(-1)));
                link(&mut g, n - 3, n - 1, q(-1));
            }
            Family::E => {
                (0..n).for_each(|i| g.set(i, i, q(2)));
                // 1-3-4-5-6-7-8 with 2 attached to 4
                link(&mut g, 0, 2, q(-1));
                link(&mut g, 1, 3, q(-1));
                (3..n).for_each(|i| link(&mut g, i - 1, i, q(-1)));
            }
            Family::F => {
                g.set(0, 0, q(2));
                g.set(1, 1, q(2));
                g.set(2, 2, q(1));
                g.set(3, 3, q(1));
                link(&mut g, 0, 1, q(-1));
                link(&mut g, 1, 2, q(-1));
                link(&mut g, 2, 3, frac(-1, 2));
            }
            Family::G => {
                g.set(0, 0, frac(2, 3));
                g.set(1, 1, q(2));
                link(&mut g, 0, 1, q(-1));
            }
        }
        g
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = |why: &str| Error::BadType(s.to_string(), why.to_string());
        let letter = chars.next().ok_or_else(|| bad("empty type"))?;
        let family = Family::from_letter(letter).ok_or_else(|| bad("unknown family letter"))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("expected a decimal rank after the family letter"));
        }
        let rank: usize = digits.parse().map_err(|_| bad("rank out of range"))?;
        SimpleType::new(family, rank)
    }
}

/// A semisimple type: a product of simple factors, e.g. `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<SimpleType>,
}

impl CartanType {
    pub fn new(factors: Vec<SimpleType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadType(String::new(), "no simple factors".into()));
        }
        Ok(Self { factors })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Self::new(vec![SimpleType::new(family, rank)?])
    }

    /// Family letter with the rank given separately (the `--rank` option).
    pub fn from_family_and_rank(letter: &str, rank: usize) -> Result<Self> {
        format!("{}{}", letter.trim(), rank).parse()
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    /// Block-diagonal Gram matrix of all factors, in factor order.
    pub fn gram(&self) -> Matrix {
        let n = self.rank();
        let mut g = Matrix::zeros(n, n);
        let mut off = 0;
        for f in &self.factors {
            let b = f.gram();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    if !b.get(i, j).is_zero() {
                        g.set(off + i, off + j, b.get(i, j).clone());
                    }
                }
            }
            off += f.rank;
        }
        g
    }

    /// Every simple type of rank at most `max_rank`, with C starting at rank 3.
    pub fn all_simple_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if family == Family::C && rank == 2 {
                    continue;
                }
                if family.admits(rank) {
                    out.push(CartanType::simple(family, rank).unwrap());
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['x', 'X'])
            .map(str::parse)
            .collect::<Result<Vec<SimpleType>>>()
            .map_err(|e| match e {
                Error::BadType(_, why) => Error::BadType(s.to_string(), why),
                other => other,
            })?;
        CartanType::new(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_case_insensitively() {
        let t: CartanType = "a1xB2".parse().unwrap();
        assert_eq!(t.to_string(), "A1xB2");
        assert_eq!(t.rank(), 3);
    }

    #[test]
    fn rejects_bad_types() {
        assert!("Z9".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("G".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
        assert!(matches!("F5".parse::<CartanType>(), Err(Error::BadRank { .. })));
    }

    #[test]
    fn gram_is_symmetric_with_expected_lengths() {
        for t in CartanType::all_simple_up_to(8) {
            let g = t.gram();
            assert_eq!(g, g.transpose(), "{t}");
            for i in 0..t.rank() {
                let l = g.get(i, i).clone();
                assert!(l == q(2) || l == q(1) || l == frac(2, 3), "{t}");
            }
        }
    }
}
