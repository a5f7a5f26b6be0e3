//! The decoding functor: codes to explicit, canonically ordered value sets.
//!
//! `Nat` decodes to a symbolic set that supports membership but not
//! enumeration. Anything that would need to enumerate an infinite set, or
//! more than [`DEFAULT_ENUMERATION_CAP`] elements, fails loudly instead.

use serde::Serialize;

use crate::code::{Code, Family};
use crate::error::{Error, Result};
use crate::limits::closure;
use crate::syntax::{print, print_value};
use crate::value::Value;

/// Largest extension [`decode`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cardinality {
    /// Saturates at `u128::MAX`.
    Finite(u128),
    Infinite,
}

impl Cardinality {
    pub fn finite(self) -> Option<u128> {
        match self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }

    fn mul(self, other: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(0), _) | (_, Finite(0)) => Finite(0),
            (Finite(a), Finite(b)) => Finite(a.saturating_mul(b)),
            _ => Infinite,
        }
    }

    fn add(self, other: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.saturating_add(b)),
            _ => Infinite,
        }
    }

    /// `self ^ exponent` with `x^0 = 1`, `0^n = 0`, `1^n = 1`.
    fn pow(self, exponent: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, exponent) {
            (_, Finite(0)) => Finite(1),
            (Finite(0), _) => Finite(0),
            (Finite(1), _) => Finite(1),
            (Finite(b), Finite(e)) => {
                let mut acc: u128 = 1;
                for _ in 0..e {
                    acc = acc.saturating_mul(b);
                    if acc == u128::MAX {
                        break;
                    }
                }
                Finite(acc)
            }
            _ => Infinite,
        }
    }
}

/// The decoded set of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Finite(Vec<Value>),
    /// The natural numbers, held symbolically.
    NatSet,
}

impl Extension {
    pub fn elements(&self) -> Result<&[Value]> {
        match self {
            Extension::Finite(xs) => Ok(xs),
            Extension::NatSet => Err(Error::NonFinitary { code: "Nat".into() }),
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            Extension::Finite(xs) => Some(xs.len()),
            Extension::NatSet => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

impl Serialize for Extension {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extension::Finite(xs) => serializer.collect_seq(xs.iter().map(print_value)),
            Extension::NatSet => serializer.serialize_str("Nat"),
        }
    }
}

/// Exact size of the decoded set, computed without enumerating it.
pub fn cardinality(c: &Code) -> Result<Cardinality> {
    use Cardinality::*;
    Ok(match c {
        Code::Star => Finite(1),
        Code::Nat => Infinite,
        Code::Fin(n) => Finite(u128::from(*n)),
        Code::Zero => Finite(0),
        Code::Pi(dom, Family::Const(body)) => cardinality(body)?.pow(cardinality(dom)?),
        Code::Pi(_, Family::Table(entries)) => {
            entries.values().try_fold(Finite(1), |acc, fibre| {
                Ok::<_, Error>(acc.mul(cardinality(fibre)?))
            })?
        }
        Code::Sigma(dom, Family::Const(body)) => cardinality(dom)?.mul(cardinality(body)?),
        Code::Sigma(_, Family::Table(entries)) => {
            entries.values().try_fold(Finite(0), |acc, fibre| {
                Ok::<_, Error>(acc.add(cardinality(fibre)?))
            })?
        }
        Code::Id(_, l, r) => Finite(u128::from(l == r)),
        Code::Quot(carrier, rel) => match cardinality(carrier)? {
            Infinite => Infinite,
            Finite(n) => {
                // Classes outside the relation's support are singletons.
                let support = closure::support_partition(rel);
                let merged: usize = support.blocks.iter().map(|b| b.len() - 1).sum();
                Finite(n - merged as u128)
            }
        },
    })
}

pub fn decode(c: &Code) -> Result<Extension> {
    decode_with_cap(c, DEFAULT_ENUMERATION_CAP)
}

pub fn decode_with_cap(c: &Code, cap: usize) -> Result<Extension> {
    match c {
        Code::Nat => Ok(Extension::NatSet),
        _ => Ok(Extension::Finite(enumerate(c, cap)?)),
    }
}

/// The decoded elements in canonical order; errors if the set is infinite
/// or exceeds the default enumeration cap.
pub fn elements(c: &Code) -> Result<Vec<Value>> {
    enumerate(c, DEFAULT_ENUMERATION_CAP)
}

fn enumerate(c: &Code, cap: usize) -> Result<Vec<Value>> {
    match cardinality(c)? {
        Cardinality::Infinite => return Err(Error::NonFinitary { code: print(c) }),
        Cardinality::Finite(n) if n > cap as u128 => {
            return Err(Error::ExtensionTooLarge {
                code: print(c),
                bound: cap,
            })
        }
        Cardinality::Finite(0) => return Ok(Vec::new()),
        Cardinality::Finite(_) => {}
    }
    let mut out = match c {
        Code::Star => vec![Value::Star],
        Code::Fin(n) => (0..*n).map(Value::Fin).collect(),
        Code::Zero => Vec::new(),
        Code::Nat => unreachable!("Nat has infinite cardinality"),
        Code::Pi(dom, fam) => {
            let domain = enumerate(dom, cap).map_err(|e| non_finitary_domain(e, c))?;
            let fibres = fibres(&domain, fam, cap)?;
            let mut tables = vec![std::collections::BTreeMap::new()];
            for (x, fibre) in domain.iter().zip(&fibres) {
                let mut next = Vec::with_capacity(tables.len() * fibre.len());
                for partial in &tables {
                    for y in fibre.iter() {
                        let mut extended = partial.clone();
                        extended.insert(x.clone(), y.clone());
                        next.push(extended);
                    }
                }
                tables = next;
            }
            tables.into_iter().map(Value::Fun).collect()
        }
        Code::Sigma(dom, fam) => {
            let domain = enumerate(dom, cap).map_err(|e| non_finitary_domain(e, c))?;
            let fibres = fibres(&domain, fam, cap)?;
            domain
                .iter()
                .zip(&fibres)
                .flat_map(|(x, fibre)| fibre.iter().map(move |y| Value::pair(x.clone(), y.clone())))
                .collect()
        }
        Code::Id(_, l, r) => {
            if l == r {
                vec![Value::Refl]
            } else {
                Vec::new()
            }
        }
        Code::Quot(carrier, rel) => {
            let carrier_elems = enumerate(carrier, cap)?;
            closure::union_find_partition(&carrier_elems, rel)?
                .representatives()
                .into_iter()
                .map(Value::class)
                .collect()
        }
    };
    out.sort();
    Ok(out)
}

fn non_finitary_domain(e: Error, whole: &Code) -> Error {
    match e {
        Error::NonFinitary { .. } => Error::NonFinitary { code: print(whole) },
        other => other,
    }
}

/// Decoded fibres, one per domain element. Constant families decode once.
fn fibres(domain: &[Value], fam: &Family, cap: usize) -> Result<Vec<std::rc::Rc<Vec<Value>>>> {
    match fam {
        Family::Const(_) if domain.is_empty() => Ok(Vec::new()),
        Family::Const(body) => {
            let fibre = std::rc::Rc::new(enumerate(body, cap)?);
            Ok(domain.iter().map(|_| fibre.clone()).collect())
        }
        Family::Table(entries) => domain
            .iter()
            .map(|x| {
                let code = entries.get(x).expect("tables are total over their domain");
                Ok(std::rc::Rc::new(enumerate(code, cap)?))
            })
            .collect(),
    }
}

fn not_in(c: &Code, v: &Value) -> Error {
    Error::NotInCarrier {
        value: print_value(v),
        carrier: print(c),
    }
}

/// Checks that `v` denotes an element of `c` and returns its canonical form.
///
/// This accepts any member of a quotient class (`(class x)` for every `x`
/// in the class), which it replaces by the least representative.
pub fn normalize(c: &Code, v: &Value) -> Result<Value> {
    match (c, v) {
        (Code::Star, Value::Star) => Ok(Value::Star),
        (Code::Nat, Value::Nat(n)) => Ok(Value::Nat(*n)),
        (Code::Fin(n), Value::Fin(k)) if k < n => Ok(Value::Fin(*k)),
        (Code::Pi(dom, fam), Value::Fun(entries)) => {
            let expected = cardinality(dom)?.finite().ok_or_else(|| not_in(c, v))?;
            let mut out = std::collections::BTreeMap::new();
            for (k, x) in entries {
                let k = normalize(dom, k)?;
                let fibre = fam.at(&k).ok_or_else(|| not_in(c, v))?;
                let x = normalize(fibre, x)?;
                out.insert(k, x);
            }
            if out.len() as u128 != expected {
                return Err(not_in(c, v));
            }
            Ok(Value::Fun(out))
        }
        (Code::Sigma(dom, fam), Value::Pair(x, y)) => {
            let x = normalize(dom, x)?;
            let fibre = fam.at(&x).ok_or_else(|| not_in(c, v))?;
            let y = normalize(fibre, y)?;
            Ok(Value::pair(x, y))
        }
        (Code::Id(_, l, r), Value::Refl) if l == r => Ok(Value::Refl),
        (Code::Quot(carrier, rel), Value::Class(x)) => {
            let x = normalize(carrier, x)?;
            Ok(Value::class(closure::representative(rel, &x)))
        }
        _ => Err(not_in(c, v)),
    }
}

/// Canonical membership: `v` is an element of `c` exactly as written.
pub fn contains(c: &Code, v: &Value) -> bool {
    normalize(c, v).is_ok_and(|n| &n == v)
}

/// Equality of two elements of `u`, after normalization.
pub fn value_eq(u: &Code, a: &Value, b: &Value) -> Result<bool> {
    Ok(normalize(u, a)? == normalize(u, b)?)
}

/// Whether `c` has an element, decided structurally from the constructors.
///
/// Families are constant or finite tables, so every code of this fragment
/// is decided, including ones whose extension cannot be enumerated such as
/// `Nat` or Π over `Nat`.
pub fn inhabited(c: &Code) -> bool {
    match c {
        Code::Star | Code::Nat => true,
        Code::Fin(n) => *n > 0,
        Code::Zero => false,
        Code::Pi(dom, Family::Const(body)) => !inhabited(dom) || inhabited(body),
        Code::Pi(_, Family::Table(entries)) => entries.values().all(inhabited),
        Code::Sigma(dom, Family::Const(body)) => inhabited(dom) && inhabited(body),
        Code::Sigma(_, Family::Table(entries)) => entries.values().any(inhabited),
        Code::Id(_, l, r) => l == r,
        Code::Quot(carrier, _) => inhabited(carrier),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Family;
    use crate::syntax::parse;

    fn f(k: u64) -> Value {
        Value::Fin(k)
    }

    fn count(text: &str) -> usize {
        elements(&parse(text).unwrap()).unwrap().len()
    }

    /// Independent count of all functions A -> B by walking every index tuple.
    fn brute_force_function_count(domain: usize, codomain: usize) -> usize {
        let mut n = 0;
        let mut digits = vec![0usize; domain];
        loop {
            n += 1;
            let mut i = 0;
            loop {
                if i == domain {
                    return n;
                }
                digits[i] += 1;
                if digits[i] < codomain {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn base_codes() {
        assert_eq!(
            decode(&Code::Star).unwrap(),
            Extension::Finite(vec![Value::Star])
        );
        assert_eq!(decode(&Code::Zero).unwrap(), Extension::Finite(vec![]));
        assert_eq!(decode(&Code::Nat).unwrap(), Extension::NatSet);
        assert_eq!(elements(&Code::fin(3)).unwrap(), vec![f(0), f(1), f(2)]);
    }

    #[test]
    fn pi_counts() {
        assert_eq!(brute_force_function_count(2, 3), 9);
        assert_eq!(count("(Pi (Fin 2) (const (Fin 3)))"), 9);
        assert_eq!(count("(Pi (Fin 2) (const (Fin 2)))"), 4);
        assert_eq!(count("(Pi 0 (const Nat))"), 1);
        assert_eq!(count("(Pi (Fin 2) (const 0))"), 0);
    }

    #[test]
    fn sigma_counts() {
        assert_eq!(
            count("(Sigma (Fin 2) (table ((fin 0) (Fin 1)) ((fin 1) (Fin 3))))"),
            4
        );
        assert_eq!(count("(Sigma 0 (const Nat))"), 0);
    }

    #[test]
    fn pi_elements_are_total_and_sorted() {
        let c = parse("(Pi (Fin 2) (table ((fin 0) (Fin 2)) ((fin 1) *)))").unwrap();
        let xs = elements(&c).unwrap();
        assert_eq!(
            xs,
            vec![
                Value::fun([(f(0), f(0)), (f(1), Value::Star)]),
                Value::fun([(f(0), f(1)), (f(1), Value::Star)]),
            ]
        );
        for x in &xs {
            assert!(contains(&c, x));
        }
    }

    #[test]
    fn identity_decoding() {
        assert!(elements(&parse("(Id (Fin 2) (fin 0) (fin 1))").unwrap())
            .unwrap()
            .is_empty());
        assert_eq!(
            elements(&parse("(Id (Fin 2) (fin 1) (fin 1))").unwrap()).unwrap(),
            vec![Value::Refl]
        );
    }

    #[test]
    fn quotient_decoding() {
        let q = parse("(Quot (Fin 3) (rel ((fin 0) (fin 1))))").unwrap();
        assert_eq!(
            elements(&q).unwrap(),
            vec![Value::class(f(0)), Value::class(f(2))]
        );
        assert!(value_eq(&q, &Value::class(f(0)), &Value::class(f(1))).unwrap());
        assert!(!value_eq(&q, &Value::class(f(0)), &Value::class(f(2))).unwrap());
        assert_eq!(cardinality(&q).unwrap(), Cardinality::Finite(2));
    }

    #[test]
    fn value_equality() {
        let fin3 = Code::fin(3);
        assert!(value_eq(&fin3, &f(1), &f(1)).unwrap());
        assert!(!value_eq(&fin3, &f(1), &f(2)).unwrap());
        assert!(matches!(
            value_eq(&fin3, &f(1), &f(3)),
            Err(Error::NotInCarrier { .. })
        ));
    }

    #[test]
    fn non_finitary() {
        assert!(matches!(
            elements(&Code::Nat),
            Err(Error::NonFinitary { .. })
        ));
        assert!(matches!(
            decode(&parse("(Pi (Fin 2) (const Nat))").unwrap()),
            Err(Error::NonFinitary { .. })
        ));
        assert!(matches!(
            decode(&parse("(Pi Nat (const *))").unwrap()),
            Err(Error::NonFinitary { .. })
        ));
        assert!(matches!(
            decode(&parse("(Sigma Nat (const *))").unwrap()),
            Err(Error::NonFinitary { .. })
        ));
        // Nothing to enumerate when a fibre is empty.
        assert_eq!(
            decode(&parse("(Sigma Nat (const 0))").unwrap()).unwrap(),
            Extension::Finite(vec![])
        );
    }

    #[test]
    fn enumeration_cap() {
        let big = parse("(Pi (Fin 3) (const (Pi (Fin 3) (const (Fin 3)))))").unwrap();
        assert_eq!(cardinality(&big).unwrap(), Cardinality::Finite(19683));
        assert!(matches!(
            decode_with_cap(&big, 1000),
            Err(Error::ExtensionTooLarge { bound: 1000, .. })
        ));
        assert_eq!(decode(&big).unwrap().len(), Some(19683));
    }

    #[test]
    fn inhabitation() {
        assert!(!inhabited(&Code::Zero));
        assert!(inhabited(&Code::Nat));
        let killed = Code::pi(
            Code::fin(2),
            Family::table([(f(0), Code::fin(1)), (f(1), Code::Zero)]),
        )
        .unwrap();
        assert!(!inhabited(&killed));
        assert!(elements(&killed).unwrap().is_empty());
        assert!(inhabited(&parse("(Pi Nat (const *))").unwrap()));
        assert!(!inhabited(&parse("(Pi Nat (const 0))").unwrap()));
        assert!(inhabited(&parse("(Pi 0 (const 0))").unwrap()));
    }

    #[test]
    fn deterministic() {
        let c = parse("(Sigma (Fin 3) (const (Quot (Fin 3) (rel ((fin 2) (fin 1))))))").unwrap();
        assert_eq!(elements(&c).unwrap(), elements(&c).unwrap());
    }
}
