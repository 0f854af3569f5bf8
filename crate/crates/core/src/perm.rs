//! Permutations on `{1..n}` and cycle notation.
//!
//! Points are 1-based at the API surface and 0-based in storage. Products are
//! read left to right: `p.compose(&q)` maps `x` to `q(p(x))`.

use std::fmt;

use crate::error::GroupError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images (`images[k-1]` is the image of `k`).
    pub fn from_images(images: &[usize]) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(GroupError::NotABijection);
            }
            seen[im - 1] = true;
            out.push((im - 1) as u16);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images
                .iter()
                .all(|&i| !std::mem::replace(&mut seen[i as usize], true))
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// The 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Left-to-right product: first `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its least point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Re-embeds the permutation on `degree` points, moving point `k` to `k + offset`.
    pub(crate) fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i + offset] = j + offset as u16;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)` on `degree` points.
///
/// Cycles are multiplied left to right. Points may be separated by whitespace
/// or commas. The empty string (or `()`) is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, GroupError> {
    let mut result = Permutation::identity(degree);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(GroupError::MalformedToken(rest.to_string()));
        };
        let Some(close) = body.find(')') else {
            return Err(GroupError::MalformedToken(rest.to_string()));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(GroupError::MalformedToken(rest.to_string()));
        }
        let mut points = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| GroupError::MalformedToken(tok.to_string()))?;
            if p == 0 || p > degree {
                return Err(GroupError::PointOutOfRange { point: p, degree });
            }
            if points.contains(&p) {
                return Err(GroupError::RepeatedPoint(p));
            }
            points.push(p);
        }
        if points.len() > 1 {
            let mut images: Vec<u16> = (0..degree as u16).collect();
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                images[from] = to as u16;
            }
            result = result.compose_unchecked(&Permutation { images });
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn three_cycle_images() {
        assert_eq!(p("(1 2 3)", 3).images(), vec![2, 3, 1]);
    }

    #[test]
    fn empty_text_is_identity() {
        assert!(p("", 4).is_identity());
        assert_eq!(p("", 4).degree(), 4);
        assert!(p("()", 2).is_identity());
    }

    #[test]
    fn cycles_multiply_left_to_right() {
        // 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        let prod = p("(1 2)(1 3)", 3);
        assert_eq!(prod.images(), vec![2, 3, 1]);
        assert_eq!(prod, p("(1 2)", 3).compose(&p("(1 3)", 3)).unwrap());
    }

    #[test]
    fn compose_evaluates_q_after_p() {
        let a = p("(1 2)", 3);
        let b = p("(1 3)", 3);
        let ab = a.compose(&b).unwrap();
        for x in 1..=3 {
            assert_eq!(ab.apply(x), b.apply(a.apply(x)));
        }
        assert_eq!(ab, p("(1 2 3)", 3));
    }

    #[test]
    fn identity_and_inverse_laws() {
        let a = p("(1 4 2)(3 5)", 5);
        assert_eq!(a.compose(&Permutation::identity(5)).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        assert_eq!(
            p("(1 2)", 2).compose(&p("(1 2)", 3)),
            Err(GroupError::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_cycles("(1 4)", 3),
            Err(GroupError::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert_eq!(
            parse_cycles("(1 2 1)", 3),
            Err(GroupError::RepeatedPoint(1))
        );
        assert!(matches!(
            parse_cycles("(1 a)", 3),
            Err(GroupError::MalformedToken(_))
        ));
        assert!(matches!(
            parse_cycles("1 2", 3),
            Err(GroupError::MalformedToken(_))
        ));
        assert!(matches!(
            parse_cycles("(1 2", 3),
            Err(GroupError::MalformedToken(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in ["()", "(1 2 3)", "(1 3)(2 5 4)"] {
            let perm = p(text, 5);
            assert_eq!(perm.to_string(), text);
            assert_eq!(p(&perm.to_string(), 5), perm);
        }
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(&[2, 3, 1]).is_ok());
        assert_eq!(
            Permutation::from_images(&[1, 1]),
            Err(GroupError::NotABijection)
        );
        assert_eq!(
            Permutation::from_images(&[0, 1]),
            Err(GroupError::NotABijection)
        );
    }
}
