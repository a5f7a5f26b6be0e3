//! Brute-force verification of universal properties.
//!
//! "For every object Z" is checked over a finite family of target codes:
//! every (co)cone into (out of) each target is enumerated and must factor
//! through the candidate by exactly one mediating map.

use std::collections::HashMap;

use serde::Serialize;

use super::map::{all_index_maps, MapTable};
use crate::code::Code;
use crate::decode;
use crate::error::{Error, Result};
use crate::syntax::print;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Universal {
    Limit,
    Colimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub map: MapTable,
}

/// A finite diagram of codes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub objects: Vec<Code>,
    pub arrows: Vec<Arrow>,
}

/// Diagram shapes with a built-in (co)limit construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// No objects: terminal / initial object.
    Empty,
    /// Two objects, no arrows: product / coproduct.
    Discrete,
    /// `R ⇉ S`: equaliser / coequaliser.
    Parallel,
    /// `A <- C -> B`: pushout (colimit only).
    Span,
}

impl Diagram {
    pub fn new(objects: Vec<Code>, arrows: Vec<Arrow>) -> Result<Self> {
        for a in &arrows {
            let (Some(src), Some(dst)) = (objects.get(a.src), objects.get(a.dst)) else {
                return Err(Error::InvalidDiagram("arrow endpoint out of range".into()));
            };
            if a.map.src() != src || a.map.dst() != dst {
                return Err(Error::MismatchedEndpoints(format!(
                    "arrow {} -> {} does not match its objects",
                    print(a.map.src()),
                    print(a.map.dst())
                )));
            }
        }
        Ok(Diagram { objects, arrows })
    }

    pub fn discrete(a: Code, b: Code) -> Self {
        Diagram {
            objects: vec![a, b],
            arrows: Vec::new(),
        }
    }

    pub fn parallel(f: MapTable, g: MapTable) -> Result<Self> {
        let objects = vec![f.src().clone(), f.dst().clone()];
        Diagram::new(
            objects,
            vec![
                Arrow {
                    src: 0,
                    dst: 1,
                    map: f,
                },
                Arrow {
                    src: 0,
                    dst: 1,
                    map: g,
                },
            ],
        )
    }

    pub fn span(f: MapTable, g: MapTable) -> Result<Self> {
        let objects = vec![f.src().clone(), f.dst().clone(), g.dst().clone()];
        Diagram::new(
            objects,
            vec![
                Arrow {
                    src: 0,
                    dst: 1,
                    map: f,
                },
                Arrow {
                    src: 0,
                    dst: 2,
                    map: g,
                },
            ],
        )
    }

    pub fn shape(&self) -> Result<Shape> {
        let n = self.objects.len();
        match (n, self.arrows.as_slice()) {
            (0, []) => Ok(Shape::Empty),
            (2, []) => Ok(Shape::Discrete),
            (2, [a, b]) if a.src == b.src && a.dst == b.dst && a.src != a.dst => {
                Ok(Shape::Parallel)
            }
            (3, [a, b]) if a.src == b.src && a.dst != b.dst && a.src != a.dst && b.src != b.dst => {
                Ok(Shape::Span)
            }
            _ => Err(Error::InvalidDiagram(format!(
                "unsupported shape: {n} objects, {} arrows",
                self.arrows.len()
            ))),
        }
    }

    /// The constructed limit cone: apex plus one leg `apex -> object` each.
    pub fn limit(&self) -> Result<Cone> {
        match self.shape()? {
            Shape::Empty => Ok(Cone {
                apex: Code::Star,
                legs: Vec::new(),
            }),
            Shape::Discrete => {
                let (fst, snd) = super::projections(&self.objects[0], &self.objects[1])?;
                Ok(Cone {
                    apex: fst.src().clone(),
                    legs: vec![fst, snd],
                })
            }
            Shape::Parallel => {
                let (a, b) = (&self.arrows[0], &self.arrows[1]);
                let incl = super::equaliser_inclusion(&a.map, &b.map)?;
                let to_dst = a.map.after(&incl)?;
                Ok(Cone {
                    apex: incl.src().clone(),
                    legs: by_object([(a.src, incl), (a.dst, to_dst)]),
                })
            }
            Shape::Span => Err(Error::InvalidDiagram(
                "limits of spans are not constructed".into(),
            )),
        }
    }

    /// The constructed colimit cocone: apex plus one leg `object -> apex` each.
    pub fn colimit(&self) -> Result<Cone> {
        match self.shape()? {
            Shape::Empty => Ok(Cone {
                apex: Code::Zero,
                legs: Vec::new(),
            }),
            Shape::Discrete => {
                let (inl, inr) = super::injections(&self.objects[0], &self.objects[1])?;
                Ok(Cone {
                    apex: inl.dst().clone(),
                    legs: vec![inl, inr],
                })
            }
            Shape::Parallel => {
                let (p, q) = (&self.arrows[0], &self.arrows[1]);
                let e = super::coequaliser_map(&p.map, &q.map)?;
                Ok(Cone {
                    apex: e.dst().clone(),
                    legs: by_object([(p.src, e.after(&p.map)?), (p.dst, e)]),
                })
            }
            Shape::Span => {
                let (f, g) = (&self.arrows[0], &self.arrows[1]);
                let (l, r) = super::pushout_maps(&f.map, &g.map)?;
                Ok(Cone {
                    apex: l.dst().clone(),
                    legs: by_object([(f.src, l.after(&f.map)?), (f.dst, l), (g.dst, r)]),
                })
            }
        }
    }
}

/// Legs ordered by the index of the object they belong to.
fn by_object<const N: usize>(legs: [(usize, MapTable); N]) -> Vec<MapTable> {
    let mut legs = legs.to_vec();
    legs.sort_by_key(|(i, _)| *i);
    legs.into_iter().map(|(_, m)| m).collect()
}

/// A candidate (co)limit: an apex and one leg per diagram object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    #[serde(serialize_with = "serialize_code")]
    pub apex: Code,
    pub legs: Vec<MapTable>,
}

fn serialize_code<S: serde::Serializer>(c: &Code, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub holds: bool,
    pub targets_checked: usize,
    pub cones_checked: usize,
    pub counterexample: Option<String>,
}

impl UniversalReport {
    fn fail(targets_checked: usize, cones_checked: usize, why: String) -> Self {
        UniversalReport {
            holds: false,
            targets_checked,
            cones_checked,
            counterexample: Some(why),
        }
    }
}

/// `Fin k` for `k ≤ 4`, followed by the diagram's own objects.
pub fn default_targets(diagram: &Diagram) -> Vec<Code> {
    let mut out: Vec<Code> = (0..=4).map(Code::fin).collect();
    for o in &diagram.objects {
        if !out.contains(o) {
            out.push(o.clone());
        }
    }
    out
}

type IndexMap = Vec<usize>;

fn index_map(m: &MapTable, src: &[Value], dst: &[Value]) -> Result<IndexMap> {
    src.iter()
        .map(|x| {
            let y = m.apply(x).ok_or_else(|| {
                Error::InvalidMap(format!(
                    "leg is undefined on an element of {}",
                    print(m.src())
                ))
            })?;
            dst.binary_search(y)
                .map_err(|_| Error::InvalidMap(format!("leg image outside {}", print(m.dst()))))
        })
        .collect()
}

fn compose(second: &[usize], first: &[usize]) -> IndexMap {
    first.iter().map(|&i| second[i]).collect()
}

/// Every choice of one map per object (object `k` ↔ `sizes[k]` points)
/// into or out of an `nz`-point target.
fn all_families(sizes: &[usize], nz: usize, kind: Universal) -> Result<Vec<Vec<IndexMap>>> {
    let mut families: Vec<Vec<IndexMap>> = vec![Vec::new()];
    for &n in sizes {
        let maps = match kind {
            Universal::Colimit => all_index_maps(n, nz)?,
            Universal::Limit => all_index_maps(nz, n)?,
        };
        let mut next = Vec::with_capacity(families.len() * maps.len());
        for fam in &families {
            for m in &maps {
                let mut extended = fam.clone();
                extended.push(m.clone());
                next.push(extended);
            }
        }
        families = next;
    }
    Ok(families)
}

pub fn check_universal(
    kind: Universal,
    diagram: &Diagram,
    candidate: &Cone,
    targets: &[Code],
) -> UniversalReport {
    match check(kind, diagram, candidate, targets) {
        Ok(report) => report,
        Err(e) => UniversalReport::fail(0, 0, e.to_string()),
    }
}

fn check(
    kind: Universal,
    diagram: &Diagram,
    candidate: &Cone,
    targets: &[Code],
) -> Result<UniversalReport> {
    if candidate.legs.len() != diagram.objects.len() {
        return Ok(UniversalReport::fail(
            0,
            0,
            "one leg per object is required".into(),
        ));
    }
    let objects = diagram
        .objects
        .iter()
        .map(decode::elements)
        .collect::<Result<Vec<_>>>()?;
    let apex = decode::elements(&candidate.apex)?;
    let mut legs = Vec::with_capacity(objects.len());
    for (k, leg) in candidate.legs.iter().enumerate() {
        let (src, dst, want_src, want_dst) = match kind {
            Universal::Colimit => (&objects[k], &apex, &diagram.objects[k], &candidate.apex),
            Universal::Limit => (&apex, &objects[k], &candidate.apex, &diagram.objects[k]),
        };
        if leg.src() != want_src || leg.dst() != want_dst {
            return Ok(UniversalReport::fail(
                0,
                0,
                format!("leg {k} has the wrong endpoints"),
            ));
        }
        legs.push(index_map(leg, src, dst)?);
    }
    let arrows = diagram
        .arrows
        .iter()
        .map(|a| {
            Ok((
                a.src,
                a.dst,
                index_map(&a.map, &objects[a.src], &objects[a.dst])?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let commutes = |fam: &[IndexMap]| {
        arrows.iter().all(|(i, j, a)| match kind {
            Universal::Colimit => compose(&fam[*j], a) == fam[*i],
            Universal::Limit => compose(a, &fam[*i]) == fam[*j],
        })
    };
    if !commutes(&legs) {
        return Ok(UniversalReport::fail(
            0,
            0,
            "candidate legs do not commute with the diagram".into(),
        ));
    }

    let sizes: Vec<usize> = objects.iter().map(Vec::len).collect();
    let mut cones_checked = 0;
    for (t, target) in targets.iter().enumerate() {
        let z = decode::elements(target)?;
        let mediators = match kind {
            Universal::Colimit => all_index_maps(apex.len(), z.len())?,
            Universal::Limit => all_index_maps(z.len(), apex.len())?,
        };
        let mut induced: HashMap<Vec<IndexMap>, usize> = HashMap::new();
        for m in &mediators {
            let fam: Vec<IndexMap> = legs
                .iter()
                .map(|leg| match kind {
                    Universal::Colimit => compose(m, leg),
                    Universal::Limit => compose(leg, m),
                })
                .collect();
            *induced.entry(fam).or_default() += 1;
        }
        for fam in all_families(&sizes, z.len(), kind)? {
            if !commutes(&fam) {
                continue;
            }
            cones_checked += 1;
            let hits = induced.get(&fam).copied().unwrap_or(0);
            if hits != 1 {
                let what = match kind {
                    Universal::Colimit => "cocone into",
                    Universal::Limit => "cone from",
                };
                return Ok(UniversalReport::fail(
                    t,
                    cones_checked,
                    format!(
                        "a {what} {} factors through {hits} mediating maps: {fam:?}",
                        print(target)
                    ),
                ));
            }
        }
    }
    Ok(UniversalReport {
        holds: true,
        targets_checked: targets.len(),
        cones_checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: u64) -> Value {
        Value::Fin(k)
    }

    fn fin_map(src: u64, dst: u64, images: &[u64]) -> MapTable {
        MapTable::from_pairs(
            Code::fin(src),
            Code::fin(dst),
            images.iter().enumerate().map(|(i, &y)| (f(i as u64), f(y))),
        )
        .unwrap()
    }

    fn fins(max: u64) -> Vec<Code> {
        (0..=max).map(Code::fin).collect()
    }

    #[test]
    fn coproduct_is_universal() {
        let d = Diagram::discrete(Code::fin(2), Code::fin(3));
        let report = check_universal(Universal::Colimit, &d, &d.colimit().unwrap(), &fins(4));
        assert!(report.holds, "{report:?}");
        // k^2 * k^3 cocones into Fin k
        assert_eq!(report.cones_checked, 1 + 32 + 243 + 1024);
    }

    #[test]
    fn coequaliser_is_universal() {
        let d = Diagram::parallel(fin_map(1, 2, &[0]), fin_map(1, 2, &[1])).unwrap();
        let report = check_universal(Universal::Colimit, &d, &d.colimit().unwrap(), &fins(3));
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn dropping_an_element_breaks_the_coproduct() {
        let d = Diagram::discrete(Code::fin(2), Code::fin(3));
        let wrong = Cone {
            apex: Code::fin(4),
            legs: vec![fin_map(2, 4, &[0, 1]), fin_map(3, 4, &[2, 3, 3])],
        };
        let report = check_universal(Universal::Colimit, &d, &wrong, &fins(4));
        assert!(!report.holds);
        assert!(report.counterexample.unwrap().contains("0 mediating maps"));
    }

    #[test]
    fn a_bigger_apex_breaks_uniqueness() {
        let d = Diagram::discrete(Code::fin(1), Code::fin(1));
        let wrong = Cone {
            apex: Code::fin(3),
            legs: vec![fin_map(1, 3, &[0]), fin_map(1, 3, &[1])],
        };
        let report = check_universal(Universal::Colimit, &d, &wrong, &fins(2));
        assert!(!report.holds);
    }

    #[test]
    fn limits_are_universal() {
        let d = Diagram::discrete(Code::fin(2), Code::fin(2));
        assert!(check_universal(Universal::Limit, &d, &d.limit().unwrap(), &fins(3)).holds);
        let e = Diagram::parallel(fin_map(3, 2, &[0, 0, 1]), fin_map(3, 2, &[0, 1, 1])).unwrap();
        assert!(check_universal(Universal::Limit, &e, &e.limit().unwrap(), &fins(3)).holds);
        let empty = Diagram::default();
        assert!(check_universal(Universal::Limit, &empty, &empty.limit().unwrap(), &fins(4)).holds);
        assert!(
            check_universal(
                Universal::Colimit,
                &empty,
                &empty.colimit().unwrap(),
                &fins(4)
            )
            .holds
        );
    }

    #[test]
    fn pushout_is_universal() {
        let d = Diagram::span(fin_map(1, 2, &[0]), fin_map(1, 2, &[1])).unwrap();
        let report = check_universal(Universal::Colimit, &d, &d.colimit().unwrap(), &fins(3));
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn shapes() {
        assert_eq!(Diagram::default().shape().unwrap(), Shape::Empty);
        let bad = Diagram {
            objects: vec![Code::fin(1)],
            arrows: vec![],
        };
        assert!(bad.shape().is_err());
        assert!(Diagram::span(fin_map(1, 2, &[0]), fin_map(1, 2, &[1]))
            .unwrap()
            .limit()
            .is_err());
        assert!(Diagram::parallel(fin_map(1, 2, &[0]), fin_map(2, 2, &[0, 1])).is_err());
    }

    #[test]
    fn legs_follow_object_order() {
        // Span apex listed last, arrows pointing at objects 0 and 1.
        let (l, r) = (fin_map(1, 2, &[1]), fin_map(1, 3, &[0]));
        let objects = vec![Code::fin(2), Code::fin(3), Code::fin(1)];
        let arrows = vec![
            Arrow {
                src: 2,
                dst: 0,
                map: l,
            },
            Arrow {
                src: 2,
                dst: 1,
                map: r,
            },
        ];
        let d = Diagram::new(objects, arrows).unwrap();
        let cone = d.colimit().unwrap();
        for (leg, obj) in cone.legs.iter().zip(&d.objects) {
            assert_eq!(leg.src(), obj);
        }
        assert!(check_universal(Universal::Colimit, &d, &cone, &default_targets(&d)).holds);

        let (p, q) = (fin_map(2, 2, &[0, 0]), fin_map(2, 2, &[0, 1]));
        let objects = vec![Code::fin(2), Code::fin(2)];
        let arrows = vec![
            Arrow {
                src: 1,
                dst: 0,
                map: p,
            },
            Arrow {
                src: 1,
                dst: 0,
                map: q,
            },
        ];
        let d = Diagram::new(objects, arrows).unwrap();
        assert!(
            check_universal(
                Universal::Limit,
                &d,
                &d.limit().unwrap(),
                &default_targets(&d)
            )
            .holds
        );
        assert!(
            check_universal(
                Universal::Colimit,
                &d,
                &d.colimit().unwrap(),
                &default_targets(&d)
            )
            .holds
        );
    }
}
