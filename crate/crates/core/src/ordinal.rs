//! Ordinals below ω³ in Cantor normal form.
//!
//! Ranks and level budgets only ever need finite suprema, successor and
//! `+ ω`, so three natural coefficients `ω²·a2 + ω·a1 + a0` are enough to
//! keep all arithmetic exact.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// `ω²·a2 + ω·a1 + a0`.
///
/// Field order matters: the derived `Ord` is lexicographic on
/// `(a2, a1, a0)`, which is exactly the ordinal order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankOrdinal {
    pub a2: u64,
    pub a1: u64,
    pub a0: u64,
}

impl RankOrdinal {
    pub const ZERO: RankOrdinal = RankOrdinal::new(0, 0, 0);
    pub const OMEGA: RankOrdinal = RankOrdinal::new(0, 1, 0);

    pub const fn new(a2: u64, a1: u64, a0: u64) -> Self {
        RankOrdinal { a2, a1, a0 }
    }

    pub const fn finite(n: u64) -> Self {
        RankOrdinal::new(0, 0, n)
    }

    /// `ω²·k`, the default shape of a level budget.
    pub const fn omega_squared_times(k: u64) -> Self {
        RankOrdinal::new(k, 0, 0)
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// True for 0 and for ordinals with no finite part.
    pub fn is_limit_or_zero(self) -> bool {
        self.a0 == 0
    }

    pub fn succ(self) -> Self {
        RankOrdinal {
            a0: self.a0 + 1,
            ..self
        }
    }

    /// `self + ω`: the finite part is absorbed.
    pub fn add_omega(self) -> Self {
        RankOrdinal::new(self.a2, self.a1 + 1, 0)
    }

    /// Whether every ordinal below `self` stays below it under `succ`.
    pub fn closed_under_succ(self) -> bool {
        self.is_limit_or_zero()
    }

    /// Whether every ordinal below `self` stays below it under `add_omega`.
    ///
    /// Below ω³ this holds exactly for 0 and the multiples `ω²·k`.
    pub fn closed_under_add_omega(self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }
}

/// Maximum of a finite list; the empty supremum is 0.
pub fn sup<I>(xs: I) -> RankOrdinal
where
    I: IntoIterator<Item = RankOrdinal>,
{
    xs.into_iter().max().unwrap_or(RankOrdinal::ZERO)
}

impl From<u64> for RankOrdinal {
    fn from(n: u64) -> Self {
        RankOrdinal::finite(n)
    }
}

/// Textual form `w2*A+w*B+C` with zero terms omitted; zero prints as `0`.
impl fmt::Display for RankOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::with_capacity(3);
        if self.a2 != 0 {
            terms.push(format!("w2*{}", self.a2));
        }
        if self.a1 != 0 {
            terms.push(format!("w*{}", self.a1));
        }
        if self.a0 != 0 || terms.is_empty() {
            terms.push(self.a0.to_string());
        }
        f.write_str(&terms.join("+"))
    }
}

impl FromStr for RankOrdinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::InvalidOrdinal {
            text: s.to_string(),
            reason: why.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = RankOrdinal::ZERO;
        // Terms must appear in strictly decreasing degree.
        let mut last_degree = 3;
        for term in compact.split('+') {
            let (degree, coeff) = if let Some(rest) = term.strip_prefix("w2*") {
                (2, rest)
            } else if let Some(rest) = term.strip_prefix("w*") {
                (1, rest)
            } else if term == "w2" {
                (2, "1")
            } else if term == "w" {
                (1, "1")
            } else {
                (0, term)
            };
            if degree >= last_degree {
                return Err(bad("terms out of order or repeated"));
            }
            last_degree = degree;
            let n: u64 = coeff.parse().map_err(|_| bad("bad coefficient"))?;
            match degree {
                2 => out.a2 = n,
                1 => out.a1 = n,
                _ => out.a0 = n,
            }
        }
        Ok(out)
    }
}

impl Serialize for RankOrdinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W: RankOrdinal = RankOrdinal::OMEGA;

    #[test]
    fn sup_examples() {
        assert_eq!(sup([]), RankOrdinal::ZERO);
        assert_eq!(
            sup([RankOrdinal::new(0, 1, 2), 5.into()]),
            RankOrdinal::new(0, 1, 2)
        );
        assert_eq!(sup([3.into(), 7.into(), 7.into()]), RankOrdinal::finite(7));
    }

    #[test]
    fn succ_examples() {
        assert_eq!(RankOrdinal::ZERO.succ(), RankOrdinal::finite(1));
        assert_eq!(RankOrdinal::new(0, 2, 0).succ(), RankOrdinal::new(0, 2, 1));
        assert_eq!(RankOrdinal::new(1, 0, 3).succ(), RankOrdinal::new(1, 0, 4));
    }

    #[test]
    fn add_omega_examples() {
        assert_eq!(RankOrdinal::finite(5).add_omega(), W);
        assert_eq!(
            RankOrdinal::new(0, 1, 2).add_omega(),
            RankOrdinal::new(0, 2, 0)
        );
        assert_eq!(
            RankOrdinal::new(1, 0, 0).add_omega(),
            RankOrdinal::new(1, 1, 0)
        );
    }

    #[test]
    fn text_form() {
        assert_eq!(RankOrdinal::new(0, 1, 2).to_string(), "w*1+2");
        assert_eq!(RankOrdinal::finite(7).to_string(), "7");
        assert_eq!(RankOrdinal::new(1, 0, 0).to_string(), "w2*1");
        assert_eq!(RankOrdinal::ZERO.to_string(), "0");
        assert_eq!(
            "w2*1+w*3+4".parse::<RankOrdinal>().unwrap(),
            RankOrdinal::new(1, 3, 4)
        );
        assert_eq!(" w * 1 ".parse::<RankOrdinal>().unwrap(), W);
        assert!("3+w*1".parse::<RankOrdinal>().is_err());
        assert!("w*x".parse::<RankOrdinal>().is_err());
        assert!("".parse::<RankOrdinal>().is_err());
    }

    #[test]
    fn closure_shapes() {
        assert!(RankOrdinal::omega_squared_times(2).closed_under_add_omega());
        assert!(!W.closed_under_add_omega());
        assert!(W.closed_under_succ());
        assert!(!RankOrdinal::finite(3).closed_under_succ());
    }

    fn ordinal() -> impl Strategy<Value = RankOrdinal> {
        (0u64..5, 0u64..5, 0u64..5).prop_map(|(a, b, c)| RankOrdinal::new(a, b, c))
    }

    proptest! {
        #[test]
        fn strict_growth(x in ordinal()) {
            prop_assert!(x < x.succ());
            prop_assert!(x < x.add_omega());
        }

        #[test]
        fn regular_budgets_absorb_add_omega(x in ordinal(), k in 1u64..8) {
            let budget = RankOrdinal::omega_squared_times(k);
            if x < budget {
                prop_assert!(x.add_omega() < budget);
                prop_assert!(x.succ() < budget);
            }
        }

        #[test]
        fn sup_is_a_member_and_order_free(mut xs in prop::collection::vec(ordinal(), 1..6)) {
            let s = sup(xs.clone());
            prop_assert!(xs.contains(&s));
            prop_assert_eq!(sup([s, s]), s);
            xs.reverse();
            prop_assert_eq!(sup(xs.clone()), s);
            let (l, r) = xs.split_at(xs.len() / 2);
            prop_assert_eq!(sup([sup(l.to_vec()), sup(r.to_vec())]), s);
        }

        #[test]
        fn text_round_trip(x in ordinal()) {
            prop_assert_eq!(x.to_string().parse::<RankOrdinal>().unwrap(), x);
        }
    }
}
