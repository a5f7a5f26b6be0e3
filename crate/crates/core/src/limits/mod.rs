//! Finite limits and colimits built from the code formers.
//!
//! Products and coproducts are Σ-codes (the coproduct indexed by `Fin 2`),
//! equalisers are Σ over identity codes, coequalisers are quotients, and
//! pushouts are a coequaliser of a coproduct.

pub mod closure;
mod map;
mod universal;

pub use closure::{quotient_closure, Partition, QuotientClosure};
pub use map::{all_index_maps, all_maps, MapTable, MAP_ENUMERATION_CAP};
pub use universal::{
    check_universal, default_targets, Arrow, Cone, Diagram, Shape, Universal, UniversalReport,
};

use crate::code::{Code, Family, RelFamily};
use crate::decode;
use crate::error::{Error, Result};
use crate::syntax::print;
use crate::value::Value;

pub fn product(a: Code, b: Code) -> Code {
    Code::Sigma(Box::new(a), Family::constant(b))
}

pub fn coproduct(a: Code, b: Code) -> Code {
    Code::sigma(
        Code::fin(2),
        Family::table([(Value::Fin(0), a), (Value::Fin(1), b)]),
    )
    .expect("Fin 2 has exactly the two table keys")
}

fn parallel(f: &MapTable, g: &MapTable) -> Result<()> {
    if f.src() != g.src() || f.dst() != g.dst() {
        return Err(Error::MismatchedEndpoints(format!(
            "{} -> {} and {} -> {} are not parallel",
            print(f.src()),
            print(f.dst()),
            print(g.src()),
            print(g.dst())
        )));
    }
    Ok(())
}

/// `Σ a:A. Id_B(f a, g a)`.
pub fn equaliser(f: &MapTable, g: &MapTable) -> Result<Code> {
    parallel(f, g)?;
    let fibres = f
        .graph()
        .iter()
        .map(|(a, fa)| {
            Ok((
                a.clone(),
                Code::id(f.dst().clone(), fa.clone(), g.graph()[a].clone())?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Code::sigma(f.src().clone(), Family::table(fibres))
}

/// The relation `{(p x, q x) | x ∈ R}` on the common codomain.
fn generated_relation(p: &MapTable, q: &MapTable) -> RelFamily {
    p.graph()
        .iter()
        .map(|(x, px)| (px.clone(), q.graph()[x].clone()))
        .collect::<Vec<_>>()
        .into()
}

/// `Quot(S, {(p x, q x)})` for `p, q : R -> S`.
pub fn coequaliser(p: &MapTable, q: &MapTable) -> Result<Code> {
    parallel(p, q)?;
    Code::quot(p.dst().clone(), generated_relation(p, q))
}

/// Coproduct of the two codomains, glued along the common source.
pub fn pushout(f: &MapTable, g: &MapTable) -> Result<Code> {
    let (left, right) = pushout_legs(f, g)?;
    coequaliser(&left, &right)
}

fn pushout_legs(f: &MapTable, g: &MapTable) -> Result<(MapTable, MapTable)> {
    if f.src() != g.src() {
        return Err(Error::MismatchedEndpoints(format!(
            "span legs start at {} and {}",
            print(f.src()),
            print(g.src())
        )));
    }
    let (inl, inr) = injections(f.dst(), g.dst())?;
    Ok((inl.after(f)?, inr.after(g)?))
}

/// `ι_A = (fin 0, -)` and `ι_B = (fin 1, -)` into `coproduct(a, b)`.
pub fn injections(a: &Code, b: &Code) -> Result<(MapTable, MapTable)> {
    let sum = coproduct(a.clone(), b.clone());
    let inl = MapTable::tabulate(a.clone(), sum.clone(), |x| {
        Value::pair(Value::Fin(0), x.clone())
    })?;
    let inr = MapTable::tabulate(b.clone(), sum, |y| Value::pair(Value::Fin(1), y.clone()))?;
    Ok((inl, inr))
}

/// Case analysis `[f, g] : A ⊔ B -> Z`.
pub fn case(f: &MapTable, g: &MapTable) -> Result<MapTable> {
    if f.dst() != g.dst() {
        return Err(Error::MismatchedEndpoints(
            "case branches have different targets".into(),
        ));
    }
    let sum = coproduct(f.src().clone(), g.src().clone());
    MapTable::tabulate(sum, f.dst().clone(), |v| match v {
        Value::Pair(tag, x) if **tag == Value::Fin(0) => f.graph()[&**x].clone(),
        Value::Pair(_, y) => g.graph()[&**y].clone(),
        _ => unreachable!("coproduct elements are tagged pairs"),
    })
}

pub fn projections(a: &Code, b: &Code) -> Result<(MapTable, MapTable)> {
    let prod = product(a.clone(), b.clone());
    let fst = MapTable::tabulate(prod.clone(), a.clone(), |v| match v {
        Value::Pair(x, _) => (**x).clone(),
        _ => unreachable!("product elements are pairs"),
    })?;
    let snd = MapTable::tabulate(prod, b.clone(), |v| match v {
        Value::Pair(_, y) => (**y).clone(),
        _ => unreachable!("product elements are pairs"),
    })?;
    Ok((fst, snd))
}

/// `⟨f, g⟩ : Z -> A × B`.
pub fn pairing(f: &MapTable, g: &MapTable) -> Result<MapTable> {
    if f.src() != g.src() {
        return Err(Error::MismatchedEndpoints(
            "pairing legs have different sources".into(),
        ));
    }
    let prod = product(f.dst().clone(), g.dst().clone());
    MapTable::tabulate(f.src().clone(), prod, |z| {
        Value::pair(f.graph()[z].clone(), g.graph()[z].clone())
    })
}

/// First projection out of `equaliser(f, g)`.
pub fn equaliser_inclusion(f: &MapTable, g: &MapTable) -> Result<MapTable> {
    let eq = equaliser(f, g)?;
    MapTable::tabulate(eq, f.src().clone(), |v| match v {
        Value::Pair(a, _) => (**a).clone(),
        _ => unreachable!("equaliser elements are pairs"),
    })
}

/// `S -> coequaliser(p, q)`, sending each element to its class.
pub fn coequaliser_map(p: &MapTable, q: &MapTable) -> Result<MapTable> {
    let quot = coequaliser(p, q)?;
    let rel = generated_relation(p, q);
    MapTable::tabulate(p.dst().clone(), quot, |x| {
        Value::class(closure::representative(&rel, x))
    })
}

/// Pushout injections `A -> P` and `B -> P`.
pub fn pushout_maps(f: &MapTable, g: &MapTable) -> Result<(MapTable, MapTable)> {
    let (left, right) = pushout_legs(f, g)?;
    let quotient = coequaliser_map(&left, &right)?;
    let (inl, inr) = injections(f.dst(), g.dst())?;
    Ok((quotient.after(&inl)?, quotient.after(&inr)?))
}

/// The unique map `a -> ⋆`.
pub fn terminal_map(a: &Code) -> Result<MapTable> {
    MapTable::tabulate(a.clone(), Code::Star, |_| Value::Star)
}

/// The unique map `0 -> a`.
pub fn initial_map(a: &Code) -> MapTable {
    MapTable::from_pairs(Code::Zero, a.clone(), []).expect("the empty graph is total on 0")
}

/// Elements of `A` on which `f` and `g` agree, by direct comparison.
pub fn pointwise_agreement(f: &MapTable, g: &MapTable) -> Result<Vec<Value>> {
    parallel(f, g)?;
    let mut out = Vec::new();
    for a in decode::elements(f.src())? {
        if decode::value_eq(f.dst(), &f.graph()[&a], &g.graph()[&a])? {
            out.push(a);
        }
    }
    Ok(out)
}
