use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::Code;
use crate::decode;
use crate::error::{Error, Result};
use crate::syntax::{print, print_value};
use crate::value::Value;

/// Most graphs [`all_maps`] will enumerate.
pub const MAP_ENUMERATION_CAP: u128 = 1 << 22;

/// An internal map between finitary codes, given by its graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapTable {
    src: Code,
    dst: Code,
    graph: BTreeMap<Value, Value>,
}

impl MapTable {
    /// Checks that the graph is total on `src` and lands in `dst`; keys and
    /// images are stored in canonical form.
    pub fn new(src: Code, dst: Code, graph: BTreeMap<Value, Value>) -> Result<Self> {
        let domain = decode::elements(&src)?;
        let mut canonical = BTreeMap::new();
        for (x, y) in &graph {
            let x = decode::normalize(&src, x)?;
            let y = decode::normalize(&dst, y)?;
            if canonical.insert(x.clone(), y).is_some() {
                return Err(Error::InvalidMap(format!(
                    "{} is mapped twice",
                    print_value(&x)
                )));
            }
        }
        if canonical.len() != domain.len() {
            return Err(Error::InvalidMap(format!(
                "graph has {} entries but {} has {} elements",
                canonical.len(),
                print(&src),
                domain.len()
            )));
        }
        Ok(MapTable {
            src,
            dst,
            graph: canonical,
        })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Value, Value)>>(
        src: Code,
        dst: Code,
        pairs: I,
    ) -> Result<Self> {
        MapTable::new(src, dst, pairs.into_iter().collect())
    }

    /// Builds a map from a function on canonical elements.
    pub fn tabulate(src: Code, dst: Code, f: impl Fn(&Value) -> Value) -> Result<Self> {
        let graph = decode::elements(&src)?.into_iter().map(|x| {
            let y = f(&x);
            (x, y)
        });
        MapTable::from_pairs(src, dst, graph)
    }

    pub fn identity(a: &Code) -> Result<Self> {
        MapTable::tabulate(a.clone(), a.clone(), Value::clone)
    }

    pub fn src(&self) -> &Code {
        &self.src
    }

    pub fn dst(&self) -> &Code {
        &self.dst
    }

    pub fn graph(&self) -> &BTreeMap<Value, Value> {
        &self.graph
    }

    pub fn apply(&self, x: &Value) -> Option<&Value> {
        self.graph.get(x)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MapTable) -> Result<MapTable> {
        if first.dst != self.src {
            return Err(Error::MismatchedEndpoints(format!(
                "cannot compose {} -> {} after {} -> {}",
                print(&self.src),
                print(&self.dst),
                print(&first.src),
                print(&first.dst)
            )));
        }
        let graph = first
            .graph
            .iter()
            .map(|(x, y)| (x.clone(), self.graph[y].clone()))
            .collect();
        Ok(MapTable {
            src: first.src.clone(),
            dst: self.dst.clone(),
            graph,
        })
    }
}

#[derive(Serialize)]
struct GraphDoc {
    src: String,
    dst: String,
    graph: Vec<(String, String)>,
}

impl Serialize for MapTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphDoc {
            src: print(&self.src),
            dst: print(&self.dst),
            graph: self
                .graph
                .iter()
                .map(|(x, y)| (print_value(x), print_value(y)))
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Every function from `n_src` points to `n_dst` points, as image-index
/// vectors in lexicographic order.
pub fn all_index_maps(n_src: usize, n_dst: usize) -> Result<Vec<Vec<usize>>> {
    let count = (n_dst as u128)
        .checked_pow(n_src as u32)
        .unwrap_or(u128::MAX);
    if count > MAP_ENUMERATION_CAP {
        return Err(Error::InvalidMap(format!(
            "{n_dst}^{n_src} maps exceed the enumeration cap"
        )));
    }
    if n_src == 0 {
        return Ok(vec![Vec::new()]);
    }
    if n_dst == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n_src];
    'outer: loop {
        out.push(digits.clone());
        for i in (0..n_src).rev() {
            digits[i] += 1;
            if digits[i] < n_dst {
                continue 'outer;
            }
            digits[i] = 0;
        }
        return Ok(out);
    }
}

/// Every map `src -> dst`.
pub fn all_maps(src: &Code, dst: &Code) -> Result<Vec<MapTable>> {
    let xs = decode::elements(src)?;
    let ys = decode::elements(dst)?;
    Ok(all_index_maps(xs.len(), ys.len())?
        .into_iter()
        .map(|images| MapTable {
            src: src.clone(),
            dst: dst.clone(),
            graph: xs
                .iter()
                .cloned()
                .zip(images.into_iter().map(|i| ys[i].clone()))
                .collect(),
        })
        .collect())
}
