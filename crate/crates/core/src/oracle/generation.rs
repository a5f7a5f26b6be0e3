//! Generation stages by iterating the code-forming operator over a finite
//! population.
//!
//! Stage `α` holds the codes that enter at `U^{α+1} = F(U^α)`. Base codes
//! enter at stage 0; Π, Σ and identity codes enter once every part is
//! already present; a quotient enters `ω` stages after its carrier. When a
//! round adds nothing, the iteration jumps to the next limit stage at which
//! a pending quotient becomes admissible.

use std::collections::HashMap;

use serde::Serialize;

use super::enumerate::CodePopulation;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::ordinal::RankOrdinal;
use crate::syntax::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub stage: RankOrdinal,
    /// Codes entering at this stage.
    pub entered: usize,
    /// `|U^{stage+1}|`.
    pub cumulative: usize,
}

#[derive(Clone, Debug)]
pub struct GenerationStages {
    index: HashMap<Code, usize>,
    stages: Vec<Option<RankOrdinal>>,
    rounds: Vec<StageCount>,
}

enum Rule {
    Base,
    /// Enters one stage after all of these.
    After(Vec<usize>),
    /// Enters `ω` stages after the carrier.
    Quotient(usize),
    /// Some part is missing from the population.
    Never,
}

impl GenerationStages {
    pub fn compute(pop: &CodePopulation) -> Self {
        let index: HashMap<Code, usize> = pop
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let rules: Vec<Rule> = pop
            .iter()
            .map(|c| {
                let parts: Option<Vec<usize>> = c
                    .parts()
                    .into_iter()
                    .map(|p| index.get(p).copied())
                    .collect();
                match (c, parts) {
                    (_, _) if c.is_base() => Rule::Base,
                    (Code::Quot(..), Some(p)) => Rule::Quotient(p[0]),
                    (_, Some(p)) => Rule::After(p),
                    (_, None) => Rule::Never,
                }
            })
            .collect();

        let mut stages: Vec<Option<RankOrdinal>> = vec![None; rules.len()];
        let mut pending: Vec<usize> = (0..rules.len())
            .filter(|&i| !matches!(rules[i], Rule::Never))
            .collect();
        let mut rounds = Vec::new();
        let mut cumulative = 0;
        let mut alpha = RankOrdinal::ZERO;
        while !pending.is_empty() {
            // Decide the whole round against U^α before recording anything.
            let entering: Vec<usize> = pending
                .iter()
                .copied()
                .filter(|&i| match &rules[i] {
                    Rule::Base => true,
                    Rule::After(parts) => {
                        parts.iter().all(|&p| stages[p].is_some_and(|s| s < alpha))
                    }
                    Rule::Quotient(carrier) => {
                        stages[*carrier].is_some_and(|s| s.add_omega() <= alpha)
                    }
                    Rule::Never => false,
                })
                .collect();
            if entering.is_empty() {
                let next_limit = pending
                    .iter()
                    .filter_map(|&i| match &rules[i] {
                        Rule::Quotient(carrier) => stages[*carrier].map(RankOrdinal::add_omega),
                        _ => None,
                    })
                    .filter(|&t| t > alpha)
                    .min();
                match next_limit {
                    Some(t) => {
                        alpha = t;
                        continue;
                    }
                    None => break,
                }
            }
            for &i in &entering {
                stages[i] = Some(alpha);
            }
            cumulative += entering.len();
            rounds.push(StageCount {
                stage: alpha,
                entered: entering.len(),
                cumulative,
            });
            pending.retain(|&i| stages[i].is_none());
            alpha = alpha.succ();
        }
        GenerationStages {
            index,
            stages,
            rounds,
        }
    }

    /// One entry per stage at which at least one code entered, in order.
    pub fn rounds(&self) -> &[StageCount] {
        &self.rounds
    }

    /// `U^α ⊆ U^β` for `α ≤ β` across the recorded rounds.
    pub fn is_monotone(&self) -> bool {
        self.rounds
            .windows(2)
            .all(|w| w[0].stage < w[1].stage && w[0].cumulative <= w[1].cumulative)
    }

    /// Codes that never enter because a part is missing from the population.
    pub fn never_entered(&self) -> usize {
        self.stages.iter().filter(|s| s.is_none()).count()
    }

    pub fn stage(&self, c: &Code) -> Result<RankOrdinal> {
        let i = *self
            .index
            .get(c)
            .ok_or_else(|| Error::OutsidePopulation(print(c)))?;
        self.stages[i]
            .ok_or_else(|| Error::OutsidePopulation(format!("{} (a part is missing)", print(c))))
    }
}

/// The least `α` with `c ∈ U^{α+1}`.
pub fn generation_rank(c: &Code, pop: &CodePopulation) -> Result<RankOrdinal> {
    GenerationStages::compute(pop).stage(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate::{enumerate, PopulationBounds};
    use crate::syntax::parse;

    fn pop(size: usize, fin: u64) -> CodePopulation {
        enumerate(PopulationBounds::new(size, fin)).unwrap()
    }

    #[test]
    fn leaves_enter_first() {
        let p = pop(3, 2);
        assert_eq!(generation_rank(&Code::Star, &p).unwrap(), RankOrdinal::ZERO);
        assert_eq!(generation_rank(&Code::Nat, &p).unwrap(), RankOrdinal::ZERO);
    }

    #[test]
    fn pi_enters_at_second_stage() {
        let p = pop(3, 2);
        let c = parse("(Pi (Fin 2) (const *))").unwrap();
        assert_eq!(generation_rank(&c, &p).unwrap(), RankOrdinal::finite(1));
    }

    #[test]
    fn nested_and_quotient_stages() {
        let p = pop(5, 2);
        let st = GenerationStages::compute(&p);
        let nested = parse("(Sigma (Fin 1) (const (Pi (Fin 2) (const *))))").unwrap();
        assert_eq!(st.stage(&nested).unwrap(), RankOrdinal::finite(2));
        let q = parse("(Quot (Fin 2) (rel ((fin 0) (fin 1))))").unwrap();
        assert_eq!(st.stage(&q).unwrap(), RankOrdinal::OMEGA);
        let over_q = parse("(Pi (Quot (Fin 2) (rel)) (const *))").unwrap();
        assert_eq!(st.stage(&over_q).unwrap(), RankOrdinal::new(0, 1, 1));
        let over_id = parse("(Quot (Id (Fin 2) (fin 0) (fin 0)) (rel))").unwrap();
        assert_eq!(st.stage(&over_id).unwrap(), RankOrdinal::OMEGA);
        let qq = parse("(Quot (Quot (Fin 1) (rel)) (rel))").unwrap();
        assert_eq!(st.stage(&qq).unwrap(), RankOrdinal::new(0, 2, 0));
    }

    #[test]
    fn stages_are_monotone_and_exhaustive() {
        let p = pop(4, 2);
        let st = GenerationStages::compute(&p);
        assert!(st.is_monotone());
        assert_eq!(st.never_entered(), 0);
        assert_eq!(st.rounds().last().unwrap().cumulative, p.len());
    }

    #[test]
    fn outside_population() {
        let p = pop(2, 1);
        let c = parse("(Pi (Fin 2) (const *))").unwrap();
        assert!(matches!(
            generation_rank(&c, &p),
            Err(Error::OutsidePopulation(_))
        ));
    }

    #[test]
    fn missing_parts_never_enter() {
        let mut p = pop(3, 1);
        p.codes.retain(|c| *c != Code::Star);
        let c = parse("(Pi (Fin 1) (const *))").unwrap();
        let st = GenerationStages::compute(&p);
        assert!(st.never_entered() > 0);
        assert!(matches!(st.stage(&c), Err(Error::OutsidePopulation(_))));
    }
}
