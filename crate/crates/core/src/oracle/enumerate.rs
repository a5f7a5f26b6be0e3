//! Exhaustive enumeration of every code within a size bound.

use std::collections::HashSet;

use serde::Serialize;

use crate::code::{Code, Family, RelFamily};
use crate::decode::{self, Cardinality};
use crate::error::{Error, Result};
use crate::syntax::print;
use crate::value::Value;

pub const DEFAULT_POPULATION_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PopulationBounds {
    /// Largest [`Code::size`].
    pub max_size: usize,
    /// Largest `n` for `Fin n` leaves, and the largest carrier cardinality
    /// for identity and quotient codes.
    pub max_fin: u64,
    pub allow_nat: bool,
    /// Enumeration fails rather than exceed this many codes.
    pub cap: usize,
}

impl PopulationBounds {
    pub fn new(max_size: usize, max_fin: u64) -> Self {
        PopulationBounds {
            max_size,
            max_fin,
            allow_nat: true,
            cap: DEFAULT_POPULATION_CAP,
        }
    }
}

/// Every code within the bounds exactly once, ordered by size and then by
/// canonical text.
#[derive(Clone, Debug)]
pub struct CodePopulation {
    pub bounds: PopulationBounds,
    pub codes: Vec<Code>,
}

impl CodePopulation {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Code> {
        self.codes.iter()
    }
}

pub fn enumerate(bounds: PopulationBounds) -> Result<CodePopulation> {
    if bounds.max_size == 0 {
        return Err(Error::InvalidDiagram(
            "population bounds must be at least 1".into(),
        ));
    }
    let mut gen = Generator {
        bounds,
        by_size: vec![Vec::new(); bounds.max_size + 1],
        total: 0,
    };
    for size in 1..=bounds.max_size {
        let mut codes = gen.codes_of_size(size)?;
        let mut seen = HashSet::with_capacity(codes.len());
        codes.retain(|c| seen.insert(c.clone()));
        let mut keyed: Vec<(String, Code)> = codes.into_iter().map(|c| (print(&c), c)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        gen.by_size[size] = keyed.into_iter().map(|(_, c)| c).collect();
    }
    Ok(CodePopulation {
        bounds,
        codes: gen.by_size.into_iter().flatten().collect(),
    })
}

struct Generator {
    bounds: PopulationBounds,
    by_size: Vec<Vec<Code>>,
    total: usize,
}

/// Ways to write `total` as an ordered sum of `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `k`-element subsets of `items`, as index lists.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Generator {
    fn push(&mut self, out: &mut Vec<Code>, c: Code) -> Result<()> {
        self.total += 1;
        if self.total > self.bounds.cap {
            return Err(Error::PopulationCap {
                cap: self.bounds.cap,
            });
        }
        out.push(c);
        Ok(())
    }

    /// Elements of `c` when it may serve as an identity or quotient carrier.
    fn small_carrier(&self, c: &Code) -> Option<Vec<Value>> {
        match decode::cardinality(c) {
            Ok(Cardinality::Finite(n)) if n <= u128::from(self.bounds.max_fin) => {
                decode::elements(c).ok()
            }
            _ => None,
        }
    }

    fn codes_of_size(&mut self, size: usize) -> Result<Vec<Code>> {
        let mut out = Vec::new();
        if size == 1 {
            let mut leaves = vec![Code::Star, Code::Zero];
            if self.bounds.allow_nat {
                leaves.push(Code::Nat);
            }
            leaves.extend((0..=self.bounds.max_fin).map(Code::Fin));
            for c in leaves {
                self.push(&mut out, c)?;
            }
            return Ok(out);
        }

        // Id(u, s, t): 1 + size(u).
        let carriers: Vec<(Code, Vec<Value>)> = self.by_size[size - 1]
            .iter()
            .filter_map(|u| self.small_carrier(u).map(|xs| (u.clone(), xs)))
            .collect();
        for (u, xs) in &carriers {
            for s in xs {
                for t in xs {
                    self.push(
                        &mut out,
                        Code::Id(Box::new(u.clone()), s.clone(), t.clone()),
                    )?;
                }
            }
        }

        // Quot(u, R): 1 + size(u) + |R|.
        for pairs_count in 0..=size - 2 {
            let carrier_size = size - 1 - pairs_count;
            let carriers: Vec<(Code, Vec<Value>)> = self.by_size[carrier_size]
                .iter()
                .filter_map(|u| self.small_carrier(u).map(|xs| (u.clone(), xs)))
                .collect();
            for (u, xs) in carriers {
                let all_pairs: Vec<(Value, Value)> = xs
                    .iter()
                    .flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone())))
                    .collect();
                for subset in subsets(all_pairs.len(), pairs_count) {
                    let rel: RelFamily = subset
                        .into_iter()
                        .map(|i| all_pairs[i].clone())
                        .collect::<Vec<_>>()
                        .into();
                    self.push(&mut out, Code::Quot(Box::new(u.clone()), rel))?;
                }
            }
        }

        // Pi/Sigma(A, const B): 1 + size(A) + size(B).
        for domain_size in 1..=size - 2 {
            let body_size = size - 1 - domain_size;
            let domains = self.by_size[domain_size].clone();
            let bodies = self.by_size[body_size].clone();
            for a in &domains {
                for b in &bodies {
                    self.push(
                        &mut out,
                        Code::Pi(Box::new(a.clone()), Family::constant(b.clone())),
                    )?;
                    self.push(
                        &mut out,
                        Code::Sigma(Box::new(a.clone()), Family::constant(b.clone())),
                    )?;
                }
            }
        }

        // Pi/Sigma(A, table): 1 + size(A) + sum of entry sizes.
        for domain_size in 1..=size - 1 {
            let budget = size - 1 - domain_size;
            let domains: Vec<(Code, Vec<Value>)> = self.by_size[domain_size]
                .iter()
                .filter_map(|a| match decode::cardinality(a) {
                    Ok(Cardinality::Finite(n)) if n <= budget as u128 => {
                        decode::elements(a).ok().map(|xs| (a.clone(), xs))
                    }
                    _ => None,
                })
                .collect();
            for (a, xs) in domains {
                for split in compositions(budget, xs.len()) {
                    let mut tables: Vec<Vec<Code>> = vec![Vec::new()];
                    for &entry_size in &split {
                        let mut next = Vec::new();
                        for partial in &tables {
                            for c in &self.by_size[entry_size] {
                                let mut extended = partial.clone();
                                extended.push(c.clone());
                                next.push(extended);
                            }
                        }
                        tables = next;
                    }
                    for entries in tables {
                        let fam = Family::table(xs.iter().cloned().zip(entries));
                        self.push(&mut out, Code::Pi(Box::new(a.clone()), fam.clone()))?;
                        self.push(&mut out, Code::Sigma(Box::new(a.clone()), fam))?;
                    }
                }
            }
        }
        Ok(out)
    }
}
