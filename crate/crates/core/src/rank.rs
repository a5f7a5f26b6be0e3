//! Structural rank, the complexity measure χ, and level budgets.

use std::fmt;

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::ordinal::{sup, RankOrdinal};
use crate::syntax::print;

/// Number of levels in the default tower.
pub const DEFAULT_LEVELS: usize = 8;

/// Structural rank.
///
/// Base codes have rank 0; Π, Σ and Id sit one above the supremum of their
/// parts; a quotient sits `ω` above its carrier, since the transitive
/// closure of its relation takes ω steps. Extensional relations contribute
/// rank 0.
pub fn rk(c: &Code) -> RankOrdinal {
    match c {
        Code::Star | Code::Nat | Code::Fin(_) | Code::Zero => RankOrdinal::ZERO,
        Code::Pi(dom, fam) | Code::Sigma(dom, fam) => {
            sup(std::iter::once(rk(dom)).chain(fam.codes().into_iter().map(rk))).succ()
        }
        Code::Id(carrier, _, _) => rk(carrier).succ(),
        Code::Quot(carrier, _) => sup([rk(carrier), rel_rank()]).add_omega(),
    }
}

/// Rank contributed by an extensional relation: its fibres are all `⋆`.
fn rel_rank() -> RankOrdinal {
    RankOrdinal::ZERO
}

/// `(rank, size)`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Complexity {
    pub rank: RankOrdinal,
    pub size: usize,
}

pub fn complexity(c: &Code) -> Complexity {
    Complexity {
        rank: rk(c),
        size: c.size(),
    }
}

/// Strictly increasing level budgets `Λ₀ < Λ₁ < …`; level `i` holds the
/// codes of rank below `Λᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerConfig {
    budgets: Vec<RankOrdinal>,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig::with_levels(DEFAULT_LEVELS)
    }
}

impl TowerConfig {
    /// Budgets `ω²·(i+1)` for `i < levels`.
    pub fn with_levels(levels: usize) -> Self {
        TowerConfig {
            budgets: (1..=levels as u64)
                .map(RankOrdinal::omega_squared_times)
                .collect(),
        }
    }

    /// Budgets must be non-empty, strictly increasing, and each closed
    /// under successor. Closure under `+ω` is reported separately by
    /// [`TowerConfig::budgets_not_closed_under_add_omega`], since small test
    /// towers deliberately violate it.
    pub fn new(budgets: Vec<RankOrdinal>) -> Result<Self> {
        if budgets.is_empty() {
            return Err(Error::InvalidBudgets("no levels".into()));
        }
        if let Some(w) = budgets.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBudgets(format!(
                "{} is not below {}",
                w[0], w[1]
            )));
        }
        if let Some(b) = budgets
            .iter()
            .find(|b| b.is_zero() || !b.closed_under_succ())
        {
            return Err(Error::InvalidBudgets(format!(
                "{b} is not closed under successor"
            )));
        }
        Ok(TowerConfig { budgets })
    }

    pub fn budgets(&self) -> &[RankOrdinal] {
        &self.budgets
    }

    pub fn levels(&self) -> usize {
        self.budgets.len()
    }

    pub fn budget(&self, level: usize) -> Result<RankOrdinal> {
        self.budgets
            .get(level)
            .copied()
            .ok_or(Error::LevelOutOfRange {
                level,
                levels: self.budgets.len(),
            })
    }

    /// Indices of budgets where a quotient over a member could leave the level.
    pub fn budgets_not_closed_under_add_omega(&self) -> Vec<usize> {
        (0..self.budgets.len())
            .filter(|&i| !self.budgets[i].closed_under_add_omega())
            .collect()
    }

    /// Parses a comma-separated budget list such as `w2*1,w2*2,w2*3`.
    pub fn parse(text: &str) -> Result<Self> {
        let budgets = text
            .split(',')
            .map(|s| s.parse::<RankOrdinal>())
            .collect::<Result<Vec<_>>>()?;
        TowerConfig::new(budgets)
    }

    pub fn least_level(&self, c: &Code) -> Option<usize> {
        self.least_level_of_rank(rk(c))
    }

    pub fn least_level_of_rank(&self, rank: RankOrdinal) -> Option<usize> {
        self.budgets.iter().position(|b| rank < *b)
    }
}

impl fmt::Display for TowerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.budgets.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn level_member(c: &Code, level: usize, cfg: &TowerConfig) -> Result<bool> {
    Ok(rk(c) < cfg.budget(level)?)
}

pub(crate) fn level_violation(c: &Code, level: usize) -> Error {
    Error::LevelViolation {
        code: print(c),
        level,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Family;
    use crate::syntax::parse;
    use crate::value::Value;
    use proptest::prelude::*;

    fn quot_example() -> Code {
        parse("(Quot (Fin 3) (rel ((fin 0) (fin 1))))").unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rk(&Code::Star), RankOrdinal::ZERO);
        assert_eq!(
            rk(&parse("(Pi (Fin 2) (const *))").unwrap()),
            RankOrdinal::finite(1)
        );
        assert_eq!(rk(&quot_example()), RankOrdinal::OMEGA);
        assert_eq!(
            rk(
                &parse("(Id (Pi (Fin 1) (const *)) (fun ((fin 0) star)) (fun ((fin 0) star)))")
                    .unwrap()
            ),
            2.into()
        );
        assert_eq!(
            rk(&parse("(Sigma (Quot (Fin 2) (rel)) (const (Fin 1)))").unwrap()),
            RankOrdinal::new(0, 1, 1)
        );
    }

    #[test]
    fn constant_body_counts_over_empty_domain() {
        let c = parse("(Pi 0 (const (Quot (Fin 1) (rel))))").unwrap();
        assert_eq!(rk(&c), RankOrdinal::new(0, 1, 1));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(
            complexity(&Code::Star),
            Complexity {
                rank: 0.into(),
                size: 1
            }
        );
        assert_eq!(
            complexity(&parse("(Pi (Fin 2) (const *))").unwrap()),
            Complexity {
                rank: 1.into(),
                size: 3
            }
        );
        assert_eq!(
            complexity(&quot_example()),
            Complexity {
                rank: RankOrdinal::OMEGA,
                size: 3
            }
        );
    }

    #[test]
    fn level_membership() {
        let cfg = TowerConfig::default();
        assert!(level_member(&Code::Star, 0, &cfg).unwrap());
        assert!(level_member(&quot_example(), 0, &cfg).unwrap());
        assert!(matches!(
            level_member(&Code::Star, 8, &cfg),
            Err(Error::LevelOutOfRange {
                level: 8,
                levels: 8
            })
        ));
        // rank exactly at the budget is excluded
        let small = TowerConfig::new(vec![
            RankOrdinal::OMEGA,
            RankOrdinal::omega_squared_times(1),
        ])
        .unwrap();
        assert!(!level_member(&quot_example(), 0, &small).unwrap());
        assert!(level_member(&quot_example(), 1, &small).unwrap());
        assert_eq!(small.least_level(&quot_example()), Some(1));
        assert_eq!(small.budgets_not_closed_under_add_omega(), vec![0]);
    }

    #[test]
    fn budget_validation() {
        assert!(TowerConfig::parse("w2*1,w2*2,w2*3").is_ok());
        assert!(matches!(
            TowerConfig::parse("w2*2,w2*1"),
            Err(Error::InvalidBudgets(_))
        ));
        assert!(matches!(
            TowerConfig::parse("w*1+1"),
            Err(Error::InvalidBudgets(_))
        ));
        assert!(matches!(
            TowerConfig::parse("0"),
            Err(Error::InvalidBudgets(_))
        ));
        assert!(matches!(
            TowerConfig::parse("w2*1,bogus"),
            Err(Error::InvalidOrdinal { .. })
        ));
        assert_eq!(
            TowerConfig::default().to_string(),
            "w2*1,w2*2,w2*3,w2*4,w2*5,w2*6,w2*7,w2*8"
        );
        assert!(TowerConfig::default()
            .budgets_not_closed_under_add_omega()
            .is_empty());
    }

    fn small_code() -> impl Strategy<Value = Code> {
        let leaf = prop_oneof![
            Just(Code::Star),
            Just(Code::Nat),
            Just(Code::Zero),
            (0u64..3).prop_map(Code::Fin),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Code::pi(a, Family::constant(b)).unwrap()),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Code::sigma(
                    a,
                    Family::constant(b)
                )
                .unwrap()),
                (0u64..3).prop_map(|n| Code::quot(
                    Code::fin(n + 1),
                    [(Value::Fin(0), Value::Fin(n))].into()
                )
                .unwrap()),
                inner.prop_map(|c| Code::quot(c, Default::default()).unwrap()),
            ]
        })
    }

    proptest! {
        #[test]
        fn composites_dominate_their_parts(c in small_code()) {
            for part in c.parts() {
                prop_assert!(complexity(part) < complexity(&c));
                prop_assert!(part.size() < c.size());
            }
        }

        #[test]
        fn membership_is_cumulative(c in small_code()) {
            let cfg = TowerConfig::default();
            for i in 0..cfg.levels() {
                if level_member(&c, i, &cfg).unwrap() {
                    for j in i..cfg.levels() {
                        prop_assert!(level_member(&c, j, &cfg).unwrap());
                    }
                }
            }
        }

        #[test]
        fn quotient_rank_is_carrier_plus_omega(c in small_code()) {
            let q = Code::quot(c.clone(), Default::default()).unwrap();
            prop_assert_eq!(rk(&q), rk(&c).add_omega());
            let cfg = TowerConfig::default();
            if let Some(level) = cfg.least_level(&c) {
                prop_assert!(level_member(&q, level, &cfg).unwrap());
            }
        }
    }
}
