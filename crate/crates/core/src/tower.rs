//! The cumulative tower and the lift functor.
//!
//! Lifting acts as the identity on code syntax; only the level annotation
//! changes. Preservation checks therefore compare syntax exactly and also
//! compare the decoded extensions of both sides.

use serde::Serialize;

use crate::code::{code_eq, Code, Family};
use crate::decode;
use crate::error::{Error, Result};
use crate::ordinal::RankOrdinal;
use crate::rank::{level_member, level_violation, rk, TowerConfig};
use crate::syntax::print;
use crate::value::Value;

/// A code together with a level it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeveledCode {
    code: Code,
    level: usize,
}

impl LeveledCode {
    pub fn new(code: Code, level: usize, cfg: &TowerConfig) -> Result<Self> {
        if !level_member(&code, level, cfg)? {
            return Err(level_violation(&code, level));
        }
        Ok(LeveledCode { code, level })
    }

    /// At the least level that contains `code`.
    pub fn least(code: Code, cfg: &TowerConfig) -> Result<Self> {
        let level = cfg
            .least_level(&code)
            .ok_or_else(|| level_violation(&code, cfg.levels() - 1))?;
        Ok(LeveledCode { code, level })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn into_code(self) -> Code {
        self.code
    }
}

pub fn lift(c: &LeveledCode, to: usize, cfg: &TowerConfig) -> Result<LeveledCode> {
    if to < c.level {
        return Err(Error::LiftBelow { from: c.level, to });
    }
    cfg.budget(to)?;
    Ok(LeveledCode {
        code: c.code.clone(),
        level: to,
    })
}

fn lift_code(c: &Code, from: usize, to: usize, cfg: &TowerConfig) -> Result<Code> {
    Ok(lift(&LeveledCode::new(c.clone(), from, cfg)?, to, cfg)?.into_code())
}

fn same_extension(a: &Code, b: &Code) -> bool {
    match (decode::decode(a), decode::decode(b)) {
        (Ok(x), Ok(y)) => x == y,
        // Neither side enumerable: agreement on the failure kind.
        (Err(x), Err(y)) => std::mem::discriminant(&x) == std::mem::discriminant(&y),
        _ => false,
    }
}

fn check_former_preservation(
    former: fn(Code, Family) -> Result<Code>,
    domain: &Code,
    fam: &Family,
    from: usize,
    to: usize,
    cfg: &TowerConfig,
) -> Result<bool> {
    if to < from {
        return Err(Error::LiftBelow { from, to });
    }
    let whole = former(domain.clone(), fam.clone())?;
    let lifted_whole = lift_code(&whole, from, to, cfg)?;

    let lifted_domain = lift_code(domain, from, to, cfg)?;
    let mut failure = None;
    let lifted_fam = fam.map_codes(|b| match lift_code(b, from, to, cfg) {
        Ok(c) => c,
        Err(e) => {
            failure.get_or_insert(e);
            b.clone()
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let rebuilt = former(lifted_domain, lifted_fam)?;
    Ok(code_eq(&lifted_whole, &rebuilt) && same_extension(&lifted_whole, &rebuilt))
}

/// `lift(Π(A, B)) = Π(lift A, lift ∘ B)` syntactically, with equal decodings.
pub fn check_pi_preservation(
    domain: &Code,
    fam: &Family,
    from: usize,
    to: usize,
    cfg: &TowerConfig,
) -> Result<bool> {
    check_former_preservation(Code::pi, domain, fam, from, to, cfg)
}

pub fn check_sigma_preservation(
    domain: &Code,
    fam: &Family,
    from: usize,
    to: usize,
    cfg: &TowerConfig,
) -> Result<bool> {
    check_former_preservation(Code::sigma, domain, fam, from, to, cfg)
}

pub fn check_id_preservation(
    carrier: &Code,
    lhs: &Value,
    rhs: &Value,
    from: usize,
    to: usize,
    cfg: &TowerConfig,
) -> Result<bool> {
    let whole = Code::id(carrier.clone(), lhs.clone(), rhs.clone())?;
    let lifted_whole = lift_code(&whole, from, to, cfg)?;
    let rebuilt = Code::id(lift_code(carrier, from, to, cfg)?, lhs.clone(), rhs.clone())?;
    Ok(code_eq(&lifted_whole, &rebuilt) && same_extension(&lifted_whole, &rebuilt))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CumulativityViolation {
    pub code: String,
    pub rank: RankOrdinal,
    pub member_at: usize,
    pub missing_at: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CumulativityReport {
    pub codes_checked: usize,
    pub level_pairs_checked: usize,
    pub violations: Vec<CumulativityViolation>,
}

impl CumulativityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Membership at `i` implies membership at every `j ≥ i`, for every code.
pub fn check_cumulativity(population: &[Code], cfg: &TowerConfig) -> CumulativityReport {
    let mut report = CumulativityReport::default();
    for c in population {
        report.codes_checked += 1;
        let rank = rk(c);
        let levels = cfg.levels();
        for i in 0..levels {
            for j in i..levels {
                report.level_pairs_checked += 1;
                let at_i = rank < cfg.budgets()[i];
                let at_j = rank < cfg.budgets()[j];
                if at_i && !at_j {
                    report.violations.push(CumulativityViolation {
                        code: print(c),
                        rank,
                        member_at: i,
                        missing_at: j,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn lifting() {
        let cfg = TowerConfig::default();
        let star = LeveledCode::new(Code::Star, 0, &cfg).unwrap();
        let lifted = lift(&star, 2, &cfg).unwrap();
        assert_eq!(lifted.level(), 2);
        assert!(code_eq(lifted.code(), star.code()));

        let q = LeveledCode::new(
            parse("(Quot (Fin 3) (rel ((fin 0) (fin 1))))").unwrap(),
            0,
            &cfg,
        )
        .unwrap();
        let q1 = lift(&q, 1, &cfg).unwrap();
        assert_eq!(q1.code(), q.code());

        let at1 = LeveledCode::new(Code::Star, 1, &cfg).unwrap();
        assert_eq!(
            lift(&at1, 0, &cfg),
            Err(Error::LiftBelow { from: 1, to: 0 })
        );
        assert!(matches!(
            lift(&at1, 99, &cfg),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn functoriality() {
        let cfg = TowerConfig::default();
        let c =
            LeveledCode::new(parse("(Sigma (Fin 2) (const (Fin 3)))").unwrap(), 0, &cfg).unwrap();
        let two_steps = lift(&lift(&c, 2, &cfg).unwrap(), 5, &cfg).unwrap();
        assert_eq!(two_steps, lift(&c, 5, &cfg).unwrap());
        assert_eq!(lift(&c, 0, &cfg).unwrap(), c);
    }

    #[test]
    fn pi_preservation() {
        let cfg = TowerConfig::default();
        assert!(
            check_pi_preservation(&Code::fin(2), &Family::constant(Code::Star), 0, 1, &cfg)
                .unwrap()
        );
        assert!(
            check_pi_preservation(&Code::Star, &Family::constant(Code::Nat), 0, 3, &cfg).unwrap()
        );
        assert!(
            check_pi_preservation(&Code::fin(2), &Family::constant(Code::Star), 2, 2, &cfg)
                .unwrap()
        );
        assert!(
            check_pi_preservation(&Code::Star, &Family::constant(Code::Star), 3, 1, &cfg).is_err()
        );
    }

    #[test]
    fn sigma_and_id_preservation() {
        let cfg = TowerConfig::default();
        let fam = Family::table([(Value::Fin(0), Code::Zero), (Value::Fin(1), Code::fin(2))]);
        assert!(check_sigma_preservation(&Code::fin(2), &fam, 0, 4, &cfg).unwrap());
        assert!(
            check_id_preservation(&Code::fin(2), &Value::Fin(0), &Value::Fin(1), 1, 7, &cfg)
                .unwrap()
        );
    }

    #[test]
    fn cumulativity_boundary() {
        let small = TowerConfig::new(vec![
            RankOrdinal::OMEGA,
            RankOrdinal::omega_squared_times(1),
        ])
        .unwrap();
        let q = parse("(Quot (Fin 3) (rel ((fin 0) (fin 1))))").unwrap();
        assert_eq!(rk(&q), small.budgets()[0]);
        let report = check_cumulativity(std::slice::from_ref(&q), &small);
        assert!(report.is_clean());
        assert!(!level_member(&q, 0, &small).unwrap());
        assert!(level_member(&q, 1, &small).unwrap());
        assert!(check_cumulativity(&[Code::Star], &TowerConfig::default()).is_clean());
    }
}
