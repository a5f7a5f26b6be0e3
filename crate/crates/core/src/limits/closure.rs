//! Least equivalence relation containing a given relation.
//!
//! Two independent routes: a union-find (used by the decoder) and the
//! stepwise transitive closure `T₀ = R ∪ Rᵒᵖ ∪ Δ`,
//! `Tₙ₊₁ = Tₙ ∪ (Tₙ ∘ Tₙ)`, run until it stabilizes.

use std::collections::BTreeMap;

use crate::code::{Code, RelFamily};
use crate::decode;
use crate::error::{Error, Result};
use crate::syntax::{print, print_value};
use crate::value::Value;

/// Blocks sorted internally and by their least element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<Value>>,
}

impl Partition {
    fn from_blocks(mut blocks: Vec<Vec<Value>>) -> Self {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        Partition { blocks }
    }

    pub fn representatives(&self) -> Vec<Value> {
        self.blocks.iter().map(|b| b[0].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Least member of the block containing `x`.
    pub fn representative_of(&self, x: &Value) -> Option<&Value> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(x).is_ok())
            .map(|b| &b[0])
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub(crate) fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            rank: vec![0; len],
        }
    }

    pub(crate) fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }

    pub(crate) fn blocks(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let root = self.find(i);
            by_root.entry(root).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

fn index_pairs(elements: &[Value], rel: &RelFamily) -> Result<Vec<(usize, usize)>> {
    let index = |v: &Value| {
        elements.binary_search(v).map_err(|_| Error::NotInCarrier {
            value: print_value(v),
            carrier: format!("{} listed elements", elements.len()),
        })
    };
    rel.pairs()
        .iter()
        .map(|(a, b)| Ok((index(a)?, index(b)?)))
        .collect()
}

/// Union-find route. `elements` must be sorted and duplicate-free.
pub fn union_find_partition(elements: &[Value], rel: &RelFamily) -> Result<Partition> {
    let pairs = index_pairs(elements, rel)?;
    let mut sets = DisjointSets::new(elements.len());
    for (a, b) in pairs {
        sets.union(a, b);
    }
    Ok(Partition::from_blocks(
        sets.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| elements[i].clone()).collect())
            .collect(),
    ))
}

/// Stepwise transitive closure route. Returns the partition and the number
/// of steps `n` after which `Tₙ₊₁ = Tₙ`.
pub fn iterated_partition(elements: &[Value], rel: &RelFamily) -> Result<(Partition, usize)> {
    let n = elements.len();
    let mut t = vec![vec![false; n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in index_pairs(elements, rel)? {
        t[a][b] = true;
        t[b][a] = true;
    }
    let mut steps = 0;
    loop {
        let mut next = t.clone();
        for x in 0..n {
            for y in (0..n).filter(|&y| t[x][y]) {
                for (z, &reach) in t[y].iter().enumerate() {
                    if reach {
                        next[x][z] = true;
                    }
                }
            }
        }
        if next == t {
            break;
        }
        t = next;
        steps += 1;
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&y| t[x][y]).collect();
        for &y in &block {
            seen[y] = true;
        }
        blocks.push(block.into_iter().map(|i| elements[i].clone()).collect());
    }
    Ok((Partition::from_blocks(blocks), steps))
}

/// Both routes over the decoded carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClosure {
    pub partition: Partition,
    pub iterated: Partition,
    pub steps: usize,
}

impl QuotientClosure {
    pub fn agree(&self) -> bool {
        self.partition == self.iterated
    }
}

pub fn quotient_closure(carrier: &Code, rel: &RelFamily) -> Result<QuotientClosure> {
    let elements = decode::elements(carrier)?;
    for (a, b) in rel.pairs() {
        for v in [a, b] {
            if elements.binary_search(v).is_err() {
                return Err(Error::NotInCarrier {
                    value: print_value(v),
                    carrier: print(carrier),
                });
            }
        }
    }
    let partition = union_find_partition(&elements, rel)?;
    let (iterated, steps) = iterated_partition(&elements, rel)?;
    Ok(QuotientClosure {
        partition,
        iterated,
        steps,
    })
}

/// Closure restricted to the values the relation mentions; every other
/// carrier element is alone in its class.
pub fn support_partition(rel: &RelFamily) -> Partition {
    let mut support: Vec<Value> = rel
        .pairs()
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    support.sort();
    support.dedup();
    union_find_partition(&support, rel).expect("support contains every related value")
}

pub fn representative(rel: &RelFamily, x: &Value) -> Value {
    if rel.is_empty() {
        return x.clone();
    }
    support_partition(rel)
        .representative_of(x)
        .unwrap_or(x)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u64) -> Value {
        Value::Fin(k)
    }

    fn blocks(p: &Partition) -> Vec<Vec<u64>> {
        p.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| match v {
                        Value::Fin(k) => *k,
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn chain_merges_everything() {
        let q = quotient_closure(&Code::fin(3), &[(f(0), f(1)), (f(1), f(2))].into()).unwrap();
        assert!(q.agree());
        assert_eq!(blocks(&q.partition), vec![vec![0, 1, 2]]);
        assert!(q.steps <= 3);
    }

    #[test]
    fn empty_relation_is_discrete() {
        let q = quotient_closure(&Code::fin(3), &RelFamily::new()).unwrap();
        assert_eq!(blocks(&q.partition), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(q.steps, 0);
    }

    #[test]
    fn disjoint_chains() {
        let q = quotient_closure(&Code::fin(4), &[(f(0), f(1)), (f(2), f(3))].into()).unwrap();
        assert!(q.agree());
        assert_eq!(blocks(&q.partition), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn pairs_outside_carrier() {
        let rel: RelFamily = [(f(0), f(7))].into();
        assert!(matches!(
            quotient_closure(&Code::fin(3), &rel),
            Err(Error::NotInCarrier { .. })
        ));
    }

    #[test]
    fn long_chain_needs_several_steps() {
        let rel: RelFamily = (0..7).map(|k| (f(k + 1), f(k))).collect::<Vec<_>>().into();
        let q = quotient_closure(&Code::fin(8), &rel).unwrap();
        assert!(q.agree());
        assert_eq!(q.partition.len(), 1);
        assert_eq!(q.steps, 3);
    }

    #[test]
    fn representatives_are_least() {
        let rel: RelFamily = [(f(2), f(1))].into();
        assert_eq!(representative(&rel, &f(2)), f(1));
        assert_eq!(representative(&rel, &f(0)), f(0));
    }
}
