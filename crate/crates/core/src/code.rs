//! The inductive–recursive code language.
//!
//! Codes are plain trees. The variants are public so that they can be
//! pattern matched, but codes should be built with the checked constructors
//! ([`Code::pi`], [`Code::sigma`], [`Code::id`], [`Code::quot`]) which enforce
//! the recursive half of the definition: identity endpoints, table keys and
//! relation pairs must be elements of the decoded carrier, and are stored in
//! canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decode::{self, Cardinality};
use crate::error::{Error, Result};
use crate::syntax;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Star,
    Nat,
    Fin(u64),
    Zero,
    Pi(Box<Code>, Family),
    Sigma(Box<Code>, Family),
    Id(Box<Code>, Value, Value),
    Quot(Box<Code>, RelFamily),
}

/// A code-valued family over the decoded domain of a Π or Σ code.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Const(Box<Code>),
    /// One entry per element of the domain, keyed by canonical value.
    Table(BTreeMap<Value, Code>),
}

/// A relation on a carrier, given by its related pairs.
///
/// No closure properties are assumed; the quotient former closes it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelFamily {
    pairs: BTreeSet<(Value, Value)>,
}

impl RelFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &BTreeSet<(Value, Value)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl<I> From<I> for RelFamily
where
    I: IntoIterator<Item = (Value, Value)>,
{
    fn from(pairs: I) -> Self {
        RelFamily {
            pairs: pairs.into_iter().collect(),
        }
    }
}

impl Family {
    pub fn constant(body: Code) -> Self {
        Family::Const(Box::new(body))
    }

    pub fn table<I: IntoIterator<Item = (Value, Code)>>(entries: I) -> Self {
        Family::Table(entries.into_iter().collect())
    }

    /// The fibre at `x`. `x` must be canonical.
    pub fn at(&self, x: &Value) -> Option<&Code> {
        match self {
            Family::Const(body) => Some(body),
            Family::Table(entries) => entries.get(x),
        }
    }

    /// Every code named by the family, whether or not the domain is empty.
    pub fn codes(&self) -> Vec<&Code> {
        match self {
            Family::Const(body) => vec![body],
            Family::Table(entries) => entries.values().collect(),
        }
    }

    pub fn map_codes(&self, mut f: impl FnMut(&Code) -> Code) -> Family {
        match self {
            Family::Const(body) => Family::constant(f(body)),
            Family::Table(entries) => {
                Family::Table(entries.iter().map(|(k, c)| (k.clone(), f(c))).collect())
            }
        }
    }

    fn size(&self) -> usize {
        self.codes().into_iter().map(Code::size).sum()
    }
}

impl Code {
    pub fn fin(n: u64) -> Code {
        Code::Fin(n)
    }

    pub fn pi(domain: Code, fam: Family) -> Result<Code> {
        let fam = check_family(&domain, fam)?;
        Ok(Code::Pi(Box::new(domain), fam))
    }

    pub fn sigma(domain: Code, fam: Family) -> Result<Code> {
        let fam = check_family(&domain, fam)?;
        Ok(Code::Sigma(Box::new(domain), fam))
    }

    pub fn id(carrier: Code, lhs: Value, rhs: Value) -> Result<Code> {
        let lhs = decode::normalize(&carrier, &lhs)?;
        let rhs = decode::normalize(&carrier, &rhs)?;
        Ok(Code::Id(Box::new(carrier), lhs, rhs))
    }

    pub fn quot(carrier: Code, rel: RelFamily) -> Result<Code> {
        let pairs = rel
            .pairs
            .iter()
            .map(|(a, b)| {
                Ok((
                    decode::normalize(&carrier, a)?,
                    decode::normalize(&carrier, b)?,
                ))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Code::Quot(Box::new(carrier), RelFamily { pairs }))
    }

    /// Node count. Every constructor and base code is one node, a family
    /// contributes the codes it names, an identity code contributes its
    /// carrier, and a relation contributes one node per related pair (the
    /// inhabited fibre of that pair).
    pub fn size(&self) -> usize {
        match self {
            Code::Star | Code::Nat | Code::Fin(_) | Code::Zero => 1,
            Code::Pi(dom, fam) | Code::Sigma(dom, fam) => 1 + dom.size() + fam.size(),
            Code::Id(carrier, _, _) => 1 + carrier.size(),
            Code::Quot(carrier, rel) => 1 + carrier.size() + rel.len(),
        }
    }

    /// Immediate subcodes.
    pub fn parts(&self) -> Vec<&Code> {
        match self {
            Code::Star | Code::Nat | Code::Fin(_) | Code::Zero => Vec::new(),
            Code::Pi(dom, fam) | Code::Sigma(dom, fam) => {
                let mut parts = vec![&**dom];
                parts.extend(fam.codes());
                parts
            }
            Code::Id(carrier, _, _) | Code::Quot(carrier, _) => vec![&**carrier],
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Code::Star | Code::Nat | Code::Fin(_) | Code::Zero)
    }
}

/// Syntactic equality. Table entries and relation pairs are kept sorted by
/// canonical value order, so this is plain structural equality.
pub fn code_eq(a: &Code, b: &Code) -> bool {
    a == b
}

fn check_family(domain: &Code, fam: Family) -> Result<Family> {
    let entries = match fam {
        Family::Const(_) => return Ok(fam),
        Family::Table(entries) => entries,
    };
    let not_total = |reason: String| Error::FamilyNotTotal {
        domain: syntax::print(domain),
        reason,
    };
    let expected = match decode::cardinality(domain) {
        Ok(Cardinality::Finite(n)) => n,
        Ok(Cardinality::Infinite) | Err(_) => {
            return Err(not_total(
                "tables need an enumerable domain; use a constant family".into(),
            ))
        }
    };
    let mut canonical = BTreeMap::new();
    for (key, code) in entries {
        let key = decode::normalize(domain, &key)?;
        if canonical.insert(key.clone(), code).is_some() {
            return Err(not_total(format!(
                "duplicate entry for {}",
                syntax::print_value(&key)
            )));
        }
    }
    if canonical.len() as u128 != expected {
        return Err(not_total(format!(
            "{} entries for {} elements",
            canonical.len(),
            expected
        )));
    }
    Ok(Family::Table(canonical))
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u64) -> Value {
        Value::Fin(k)
    }

    #[test]
    fn sizes() {
        assert_eq!(Code::Star.size(), 1);
        assert_eq!(Code::Zero.size(), 1);
        let pi = Code::pi(Code::fin(2), Family::constant(Code::Star)).unwrap();
        assert_eq!(pi.size(), 3);
        let q = Code::quot(Code::fin(3), [(f(0), f(1))].into()).unwrap();
        assert_eq!(q.size(), 3);
        let id = Code::id(Code::fin(2), f(0), f(1)).unwrap();
        assert_eq!(id.size(), 2);
        let table = Code::sigma(
            Code::fin(2),
            Family::table([(f(0), Code::fin(1)), (f(1), pi.clone())]),
        )
        .unwrap();
        assert_eq!(table.size(), 1 + 1 + 1 + 3);
    }

    #[test]
    fn syntactic_equality() {
        assert!(code_eq(&Code::Star, &Code::Star));
        assert!(!code_eq(&Code::fin(2), &Code::fin(3)));
        let a = Code::pi(Code::fin(1), Family::constant(Code::Star)).unwrap();
        let b = Code::pi(Code::fin(1), Family::table([(f(0), Code::Star)])).unwrap();
        assert!(!code_eq(&a, &b));
    }

    #[test]
    fn table_order_is_normalized() {
        let a = Code::pi(
            Code::fin(2),
            Family::table([(f(1), Code::Zero), (f(0), Code::Star)]),
        )
        .unwrap();
        let b = Code::pi(
            Code::fin(2),
            Family::table([(f(0), Code::Star), (f(1), Code::Zero)]),
        )
        .unwrap();
        assert!(code_eq(&a, &b));
    }

    #[test]
    fn rejects_values_outside_carrier() {
        assert!(matches!(
            Code::id(Code::fin(2), f(0), f(2)),
            Err(Error::NotInCarrier { .. })
        ));
        assert!(matches!(
            Code::id(Code::Zero, Value::Star, Value::Star),
            Err(Error::NotInCarrier { .. })
        ));
        assert!(matches!(
            Code::quot(Code::fin(2), [(f(0), Value::Star)].into()),
            Err(Error::NotInCarrier { .. })
        ));
    }

    #[test]
    fn rejects_partial_tables() {
        let missing = Code::pi(Code::fin(2), Family::table([(f(0), Code::Star)]));
        assert!(matches!(missing, Err(Error::FamilyNotTotal { .. })));
        let over_nat = Code::sigma(Code::Nat, Family::table([(Value::Nat(0), Code::Star)]));
        assert!(matches!(over_nat, Err(Error::FamilyNotTotal { .. })));
        let stray = Code::pi(
            Code::fin(1),
            Family::table([(f(0), Code::Star), (f(1), Code::Star)]),
        );
        assert!(stray.is_err());
    }

    #[test]
    fn identity_endpoints_are_normalized_in_quotients() {
        let q = Code::quot(Code::fin(3), [(f(1), f(0))].into()).unwrap();
        let id = Code::id(q, Value::class(f(1)), Value::class(f(0))).unwrap();
        match id {
            Code::Id(_, l, r) => {
                assert_eq!(l, Value::class(f(0)));
                assert_eq!(r, Value::class(f(0)));
            }
            _ => unreachable!(),
        }
    }
}
