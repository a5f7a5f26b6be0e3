use std::collections::BTreeMap;

/// A canonical element of a decoded code.
///
/// The derived order (constructor tag first, then contents
/// lexicographically) is the global canonical order used for enumeration,
/// table keys and quotient representatives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Star,
    Nat(u64),
    Fin(u64),
    Pair(Box<Value>, Box<Value>),
    /// A total function, tabulated over its whole domain.
    Fun(BTreeMap<Value, Value>),
    Refl,
    /// A quotient class, named by its least member.
    Class(Box<Value>),
}

impl Value {
    pub fn pair(fst: Value, snd: Value) -> Value {
        Value::Pair(Box::new(fst), Box::new(snd))
    }

    pub fn class(rep: Value) -> Value {
        Value::Class(Box::new(rep))
    }

    pub fn fun<I: IntoIterator<Item = (Value, Value)>>(entries: I) -> Value {
        Value::Fun(entries.into_iter().collect())
    }
}
