//! Propositional resizing.
//!
//! An h-proposition at any level is equivalent to `Fin 1` (inhabited) or
//! `Fin 0` (empty) at level 0. Hom-sets between propositions have at most
//! one element, so the adjunction `PropRes ⊣ ι` can be checked exhaustively:
//! every hom-set is enumerated and the transposition maps are compared as
//! graphs.

use serde::Serialize;

use crate::code::{code_eq, Code};
use crate::decode::{self, Cardinality};
use crate::error::{Error, Result};
use crate::limits::{all_maps, MapTable};
use crate::rank::{level_member, level_violation, TowerConfig};
use crate::syntax::print;
use crate::value::Value;

/// At most one element. Decided from the exact cardinality, so codes that
/// cannot be enumerated (such as `Nat`) are still classified.
pub fn is_hprop(c: &Code) -> bool {
    matches!(decode::cardinality(c), Ok(Cardinality::Finite(n)) if n <= 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropCode {
    code: Code,
    level: usize,
}

impl PropCode {
    pub fn new(code: Code, level: usize, cfg: &TowerConfig) -> Result<Self> {
        if !is_hprop(&code) {
            return Err(Error::NotAProposition { code: print(&code) });
        }
        if !level_member(&code, level, cfg)? {
            return Err(level_violation(&code, level));
        }
        Ok(PropCode { code, level })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The inclusion `ι` into a higher level.
    pub fn include(&self, level: usize, cfg: &TowerConfig) -> Result<PropCode> {
        if level < self.level {
            return Err(Error::LiftBelow {
                from: self.level,
                to: level,
            });
        }
        PropCode::new(self.code.clone(), level, cfg)
    }
}

/// An equivalence of propositions, as maps both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropEquivalence {
    pub forward: MapTable,
    pub backward: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resized {
    pub prop: PropCode,
    /// `ε_P : P ≃ PropRes P`.
    pub epsilon: PropEquivalence,
}

/// `Fin 1` if `p` is inhabited, `Fin 0` otherwise, at level 0.
pub fn prop_res(p: &PropCode, cfg: &TowerConfig) -> Result<Resized> {
    let elems = decode::elements(&p.code)?;
    let small = Code::fin(elems.len() as u64);
    let token = Value::Fin(0);
    let forward = MapTable::from_pairs(
        p.code.clone(),
        small.clone(),
        elems.iter().map(|x| (x.clone(), token.clone())),
    )?;
    let backward = MapTable::from_pairs(
        small.clone(),
        p.code.clone(),
        elems.iter().map(|x| (token.clone(), x.clone())),
    )?;
    Ok(Resized {
        prop: PropCode::new(small, 0, cfg)?,
        epsilon: PropEquivalence { forward, backward },
    })
}

/// A map between propositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropHom {
    pub src: PropCode,
    pub dst: PropCode,
    pub witness: MapTable,
}

impl PropHom {
    pub fn new(src: PropCode, dst: PropCode, witness: MapTable) -> Result<Self> {
        if witness.src() != src.code() || witness.dst() != dst.code() {
            return Err(Error::MismatchedEndpoints(
                "witness does not match the propositions".into(),
            ));
        }
        Ok(PropHom { src, dst, witness })
    }

    /// The unique hom, if any: exists iff `src` is empty or `dst` inhabited.
    pub fn between(src: &PropCode, dst: &PropCode) -> Result<Option<PropHom>> {
        Ok(hom_set(src.code(), dst.code())?
            .pop()
            .map(|witness| PropHom {
                src: src.clone(),
                dst: dst.clone(),
                witness,
            }))
    }

    pub fn identity(p: &PropCode) -> Result<PropHom> {
        Ok(PropHom {
            src: p.clone(),
            dst: p.clone(),
            witness: MapTable::identity(p.code())?,
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PropHom) -> Result<PropHom> {
        Ok(PropHom {
            src: first.src.clone(),
            dst: self.dst.clone(),
            witness: self.witness.after(&first.witness)?,
        })
    }
}

/// Every map between two propositions; at most one.
pub fn hom_set(src: &Code, dst: &Code) -> Result<Vec<MapTable>> {
    all_maps(src, dst)
}

/// `PropRes(f) = ε_{P'} ∘ f ∘ ε_P⁻¹`.
pub fn prop_res_map(f: &PropHom, cfg: &TowerConfig) -> Result<PropHom> {
    let src = prop_res(&f.src, cfg)?;
    let dst = prop_res(&f.dst, cfg)?;
    let witness = dst
        .epsilon
        .forward
        .after(&f.witness.after(&src.epsilon.backward)?)?;
    PropHom::new(src.prop, dst.prop, witness)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

impl AdjunctionReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Hom₀(PropRes P, Q) ≅ Hom_i(P, ιQ)` for every `P` in `population`
/// and every level-0 `Q` in `targets`, via `Φ(g) = g ∘ ε_P` and
/// `Ψ(h) = h ∘ ε_P⁻¹`, together with both triangle identities for the unit
/// `η_P = ε_P` and the counit `δ_Q = id`.
pub fn check_adjunction(
    population: &[PropCode],
    targets: &[PropCode],
    cfg: &TowerConfig,
) -> AdjunctionReport {
    let mut report = AdjunctionReport::default();
    for q in targets {
        if let Err(e) = check_counit(q, cfg) {
            report
                .violations
                .push(format!("target {}: {e}", print(q.code())));
        }
    }
    for p in population {
        for q in targets {
            report.pairs_checked += 1;
            if let Err(why) = check_pair(p, q, cfg) {
                report.violations.push(format!(
                    "P = {} (level {}), Q = {}: {why}",
                    print(p.code()),
                    p.level(),
                    print(q.code())
                ));
            }
        }
    }
    report
}

type Check = std::result::Result<(), String>;

fn fail(e: Error) -> String {
    e.to_string()
}

/// `PropRes(ι Q) = Q`, so the counit can be the identity, and the second
/// triangle `ι(δ_Q) ∘ η_{ιQ} = id_{ιQ}` holds.
fn check_counit(q: &PropCode, cfg: &TowerConfig) -> Check {
    if q.level() != 0 {
        return Err("targets must live at level 0".into());
    }
    let resized = prop_res(q, cfg).map_err(fail)?;
    if !code_eq(resized.prop.code(), q.code()) {
        return Err(format!(
            "PropRes(ιQ) = {} differs from Q",
            print(resized.prop.code())
        ));
    }
    let counit = MapTable::identity(q.code()).map_err(fail)?;
    let triangle = counit.after(&resized.epsilon.forward).map_err(fail)?;
    if triangle != MapTable::identity(q.code()).map_err(fail)? {
        return Err("ι(δ_Q) ∘ η_ιQ is not the identity".into());
    }
    Ok(())
}

fn check_pair(p: &PropCode, q: &PropCode, cfg: &TowerConfig) -> Check {
    let resized = prop_res(p, cfg).map_err(fail)?;
    let small = resized.prop.code();
    if !crate::rank::rk(small).is_zero() {
        return Err("resized proposition has nonzero rank".into());
    }
    let eps = &resized.epsilon;
    let included = q.include(p.level(), cfg).map_err(fail)?;

    let hom_small = hom_set(small, q.code()).map_err(fail)?;
    let hom_big = hom_set(p.code(), included.code()).map_err(fail)?;
    if hom_small.len() > 1 || hom_big.len() > 1 {
        return Err("a hom-set between propositions has two elements".into());
    }
    if hom_small.is_empty() != hom_big.is_empty() {
        return Err(format!(
            "hom-set sizes differ: {} small vs {} large",
            hom_small.len(),
            hom_big.len()
        ));
    }
    let phi = |g: &MapTable| g.after(&eps.forward);
    let psi = |h: &MapTable| h.after(&eps.backward);
    for g in &hom_small {
        let transposed = phi(g).map_err(fail)?;
        if !hom_big.contains(&transposed) {
            return Err("Φ(g) is not a hom P -> ιQ".into());
        }
        if psi(&transposed).map_err(fail)? != *g {
            return Err("Ψ ∘ Φ is not the identity".into());
        }
    }
    for h in &hom_big {
        let transposed = psi(h).map_err(fail)?;
        if !hom_small.contains(&transposed) {
            return Err("Ψ(h) is not a hom PropRes P -> Q".into());
        }
        if phi(&transposed).map_err(fail)? != *h {
            return Err("Φ ∘ Ψ is not the identity".into());
        }
    }

    // First triangle: δ_{PropRes P} ∘ PropRes(η_P) = id_{PropRes P}.
    let unit = PropHom::new(
        p.clone(),
        resized.prop.include(p.level(), cfg).map_err(fail)?,
        eps.forward.clone(),
    )
    .map_err(fail)?;
    let resized_unit = prop_res_map(&unit, cfg).map_err(fail)?;
    if !code_eq(resized_unit.dst.code(), small) {
        return Err("PropRes(ι PropRes P) differs from PropRes P".into());
    }
    let counit = MapTable::identity(small).map_err(fail)?;
    if counit.after(&resized_unit.witness).map_err(fail)?
        != MapTable::identity(small).map_err(fail)?
    {
        return Err("δ ∘ PropRes(η) is not the identity".into());
    }
    Ok(())
}
