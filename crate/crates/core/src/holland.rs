//! Representation of a finite basic pseudo hoop by order-preserving maps of a chain.
//!
//! For every `g < 1` (in index order) fix the first value `V_g` of `g`. The right classes
//! of `V_g` form a chain `Ω_g`; `Ω` is their segment-major concatenation. An element `a`
//! acts on `Ω_g` by `V_g x ↦ V_g (x ⊙ a)` with residual `V_g x ↦ V_g (a → x)`.
//! Maps act on the right, so composition applies the left map first.
//!
//! Points of `Ω` are numbered `0..len` along the total order, so comparing points is
//! comparing indices.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::are_isomorphic;
use crate::error::{Error, InputError, Result};
use crate::filters::{class_structure, values_of, Filter, Side};
use crate::{Elem, ElemSet, FiniteHoop};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub g: Elem,
    pub value: Filter,
    /// Right classes from bottom to top.
    pub classes: Vec<ElemSet>,
    /// Element to class rank.
    #[serde(skip)]
    pub rank_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaChain {
    pub segments: Vec<Segment>,
    #[serde(skip)]
    offsets: Vec<usize>,
}

impl OmegaChain {
    pub fn len(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Global index of the class of `x` in segment `s`.
    pub fn point(&self, s: usize, x: Elem) -> usize {
        self.offsets[s] + self.segments[s].rank_of[x]
    }

    /// `(segment, rank)` of a global point.
    pub fn locate(&self, p: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= p) - 1;
        (s, p - self.offsets[s])
    }

    fn segment_range(&self, s: usize) -> std::ops::Range<usize> {
        self.offsets[s]..self.offsets[s + 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneMap {
    pub element: Elem,
    pub images: Vec<usize>,
}

impl MonotoneMap {
    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    /// Pointwise `≤`.
    pub fn leq(&self, other: &MonotoneMap) -> bool {
        self.images.iter().zip(&other.images).all(|(a, b)| a <= b)
    }
}

/// Apply `f`, then `g`.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&p| g[p]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Representation {
    #[serde(skip)]
    pub algebra: FiniteHoop,
    pub omega: OmegaChain,
    pub maps: Vec<MonotoneMap>,
    pub residuals: Vec<MonotoneMap>,
}

pub fn build_representation(m: &FiniteHoop) -> Result<Representation> {
    if !m.flags().basic {
        return Err(Error::Inapplicable("basic"));
    }
    let mut segments = Vec::new();
    for g in m.elements().filter(|&g| g != m.unit()) {
        let value = values_of(m, g)?[0].value;
        let qs = class_structure(m, value, Side::Right)?;
        if !qs.is_total() {
            return Err(Error::Inconsistency(format!("classes of the value {:?} of {g} are not a chain", value)));
        }
        let chain = qs.chain();
        let mut rank_of_class = vec![0; chain.len()];
        for (r, &c) in chain.iter().enumerate() {
            rank_of_class[c] = r;
        }
        segments.push(Segment {
            g,
            value,
            classes: chain.iter().map(|&c| qs.classes[c]).collect(),
            rank_of: qs.class_of.iter().map(|&c| rank_of_class[c]).collect(),
        });
    }
    let mut offsets = vec![0];
    for s in &segments {
        offsets.push(offsets.last().unwrap() + s.classes.len());
    }
    let omega = OmegaChain { segments, offsets };

    let induced = |a: Elem, op: &dyn Fn(Elem) -> Elem, what: &str| -> Result<MonotoneMap> {
        let mut images = vec![usize::MAX; omega.len()];
        for (s, seg) in omega.segments.iter().enumerate() {
            for x in m.elements() {
                let p = omega.point(s, x);
                let q = omega.point(s, op(x));
                if images[p] != usize::MAX && images[p] != q {
                    return Err(Error::Inconsistency(format!(
                        "{what} of {a} is not well defined on the classes of {:?} at {x}",
                        seg.value
                    )));
                }
                images[p] = q;
            }
        }
        Ok(MonotoneMap { element: a, images })
    };
    let maps = m
        .elements()
        .map(|a| induced(a, &|x| m.mul(x, a), "right translation"))
        .collect::<Result<Vec<_>>>()?;
    let residuals = m
        .elements()
        .map(|a| induced(a, &|x| m.rimp(a, x), "residual"))
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        algebra: m.clone(),
        omega,
        maps,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HollandProperty {
    /// `f₀(1)` is the identity.
    Identity,
    MapsMonotone,
    SegmentsPreserved,
    /// `f₀(a) ≤ f₀(b)` iff `a ≤ b`.
    OrderEmbedding,
    Injective,
    /// `f₀(a) ∘ f₀(b) = f₀(a ⊙ b)`.
    Composition,
    /// `f₀(a ∨ b) = f₀(a) ∨ f₀(b)` pointwise.
    Join,
    /// `f₀(a ∧ b) = f₀(a) ∧ f₀(b)` pointwise.
    Meet,
    /// `(x)f ≤ y` iff `x ≤ (y)f*`.
    Adjunction,
    /// `e ≤ f ∘ f*`.
    UnitLaw,
    /// `f* ∘ f ≤ e`.
    CounitLaw,
    /// `f = f ∘ f* ∘ f`.
    TriangleLaw,
    /// The stored residual is the only monotone map satisfying the adjunction.
    ResidualUnique,
    /// Composition reproduces `⊙`, and with transported arrows the maps form a copy of `M`.
    TransportedTables,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: HollandProperty,
    /// `None` when the check was not run (residual uniqueness on large chains).
    pub holds: Option<bool>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HollandReport {
    pub omega_size: usize,
    pub segment_sizes: Vec<usize>,
    pub results: Vec<PropertyResult>,
}

impl HollandReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.holds != Some(false))
    }

    pub fn get(&self, p: HollandProperty) -> Option<bool> {
        self.results.iter().find(|r| r.property == p).and_then(|r| r.holds)
    }
}

/// Residual uniqueness is exhausted over all monotone maps of chains up to this length.
pub const MAX_UNIQUENESS_OMEGA: usize = 6;

fn first<T>(mut it: impl Iterator<Item = T>) -> Option<T> {
    it.next()
}

/// All non-decreasing maps `{0..len} → {0..len}`.
fn monotone_maps(len: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..len {
            cur.push(v);
            go(len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, &mut Vec::with_capacity(len), &mut out);
    out
}

fn adjoint(f: &[usize], g: &[usize]) -> bool {
    let n = f.len();
    (0..n).all(|x| (0..n).all(|y| (f[x] <= y) == (x <= g[y])))
}

pub fn verify_representation(r: &Representation) -> HollandReport {
    let m = &r.algebra;
    let omega = &r.omega;
    let len = omega.len();
    let pts = 0..len;
    let elems = || m.elements();
    let pairs = || elems().flat_map(move |a| elems().map(move |b| (a, b)));
    let f = |a: Elem| &r.maps[a].images;
    let fs = |a: Elem| &r.residuals[a].images;
    let mut results = Vec::new();
    let mut record = |property, witness: Option<Vec<usize>>| {
        results.push(PropertyResult { property, holds: Some(witness.is_none()), witness: witness.unwrap_or_default() });
    };

    record(
        HollandProperty::Identity,
        first(pts.clone().filter(|&p| f(m.unit())[p] != p)).map(|p| vec![p]),
    );
    record(
        HollandProperty::MapsMonotone,
        first(elems().flat_map(|a| (1..len).filter(move |&p| f(a)[p - 1] > f(a)[p]).map(move |p| vec![a, p]))),
    );
    record(
        HollandProperty::SegmentsPreserved,
        first(elems().flat_map(|a| {
            (0..omega.segments.len()).flat_map(move |s| {
                omega
                    .segment_range(s)
                    .filter(move |&p| !omega.segment_range(s).contains(&f(a)[p]))
                    .map(move |p| vec![a, p])
            })
        })),
    );
    record(
        HollandProperty::OrderEmbedding,
        first(pairs().filter(|&(a, b)| r.maps[a].leq(&r.maps[b]) != m.leq(a, b)).map(|(a, b)| vec![a, b])),
    );
    record(
        HollandProperty::Injective,
        first(pairs().filter(|&(a, b)| a < b && f(a) == f(b)).map(|(a, b)| vec![a, b])),
    );
    record(
        HollandProperty::Composition,
        first(pairs().filter(|&(a, b)| compose(f(a), f(b)) != *f(m.mul(a, b))).map(|(a, b)| vec![a, b])),
    );
    record(
        HollandProperty::Join,
        first(pairs().filter_map(|(a, b)| {
            let j = m.join(a, b)?;
            pts.clone().find(|&p| f(j)[p] != f(a)[p].max(f(b)[p])).map(|p| vec![a, b, p])
        })),
    );
    record(
        HollandProperty::Meet,
        first(pairs().filter_map(|(a, b)| {
            let w = m.meet(a, b);
            pts.clone().find(|&p| f(w)[p] != f(a)[p].min(f(b)[p])).map(|p| vec![a, b, p])
        })),
    );
    record(
        HollandProperty::Adjunction,
        first(elems().filter(|&a| !adjoint(f(a), fs(a))).map(|a| vec![a])),
    );
    record(
        HollandProperty::UnitLaw,
        first(elems().flat_map(|a| pts.clone().filter(move |&p| p > fs(a)[f(a)[p]]).map(move |p| vec![a, p]))),
    );
    record(
        HollandProperty::CounitLaw,
        first(elems().flat_map(|a| pts.clone().filter(move |&p| f(a)[fs(a)[p]] > p).map(move |p| vec![a, p]))),
    );
    record(
        HollandProperty::TriangleLaw,
        first(elems().flat_map(|a| pts.clone().filter(move |&p| f(a)[fs(a)[f(a)[p]]] != f(a)[p]).map(move |p| vec![a, p]))),
    );

    if len <= MAX_UNIQUENESS_OMEGA {
        let candidates = monotone_maps(len);
        record(
            HollandProperty::ResidualUnique,
            first(elems().filter(|&a| {
                let found: Vec<&Vec<usize>> = candidates.iter().filter(|g| adjoint(f(a), g)).collect();
                found.len() != 1 || found[0] != fs(a)
            }))
            .map(|a| vec![a]),
        );
    } else {
        results.push(PropertyResult { property: HollandProperty::ResidualUnique, holds: None, witness: vec![] });
    }

    // Composition table over the maps, arrows carried over from M.
    let index_of = |images: &[usize]| r.maps.iter().position(|g| g.images == images);
    let transported = (|| {
        let mut tables = m.to_tables();
        for (a, b) in pairs() {
            let c = index_of(&compose(f(a), f(b))).ok_or(vec![a, b])?;
            tables.prod[a][b] = c;
        }
        let copy = FiniteHoop::from_tables(&tables).map_err(|_| vec![])?;
        if copy == *m && are_isomorphic(&copy, m) {
            Ok(())
        } else {
            Err(vec![])
        }
    })();
    results.push(PropertyResult {
        property: HollandProperty::TransportedTables,
        holds: Some(transported.is_ok()),
        witness: transported.err().unwrap_or_default(),
    });

    HollandReport {
        omega_size: len,
        segment_sizes: omega.segments.iter().map(|s| s.classes.len()).collect(),
        results,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = InputError;

    fn from_str(s: &str) -> std::result::Result<Self, InputError> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            _ => Err(InputError::new("format", format!("unknown export format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct JsonSegment<'a> {
    g: Elem,
    value: Filter,
    classes: &'a [ElemSet],
}

#[derive(Serialize)]
struct JsonExport<'a> {
    segments: Vec<JsonSegment<'a>>,
    maps: &'a [MonotoneMap],
    residuals: &'a [MonotoneMap],
}

/// Renders the chain and maps. The dot output draws the map of `selected`
/// (default: the first element).
pub fn export_representation(r: &Representation, format: ExportFormat, selected: Option<Elem>) -> Result<Vec<u8>> {
    match format {
        ExportFormat::Json => {
            let doc = JsonExport {
                segments: r
                    .omega
                    .segments
                    .iter()
                    .map(|s| JsonSegment { g: s.g, value: s.value, classes: &s.classes })
                    .collect(),
                maps: &r.maps,
                residuals: &r.residuals,
            };
            let mut out = serde_json::to_vec_pretty(&doc).expect("serializable");
            out.push(b'\n');
            Ok(out)
        }
        ExportFormat::Dot => {
            let sel = selected.unwrap_or(0);
            if sel >= r.maps.len() {
                return Err(InputError::new("element", format!("{sel} is out of range")).into());
            }
            let mut s = String::from("digraph omega {\n  rankdir=BT;\n");
            for (i, seg) in r.omega.segments.iter().enumerate() {
                let _ = writeln!(s, "  subgraph cluster_{i} {{\n    label=\"g = {}\";", seg.g);
                for (k, cls) in seg.classes.iter().enumerate() {
                    let _ = writeln!(s, "    p{} [label=\"{cls:?}\"];", r.omega.offsets[i] + k);
                }
                for k in 1..seg.classes.len() {
                    let p = r.omega.offsets[i] + k;
                    let _ = writeln!(s, "    p{} -> p{p};", p - 1);
                }
                s.push_str("  }\n");
            }
            for (p, q) in r.maps[sel].images.iter().enumerate() {
                let _ = writeln!(s, "  p{p} -> p{q} [style=dashed, label=\"{sel}\"];");
            }
            s.push_str("}\n");
            Ok(s.into_bytes())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn trivial_algebra() {
        let r = build_representation(&named::t1()).unwrap();
        assert!(r.omega.is_empty());
        assert!(verify_representation(&r).passed());
        let json: serde_json::Value =
            serde_json::from_slice(&export_representation(&r, ExportFormat::Json, None).unwrap()).unwrap();
        assert_eq!(json["segments"], serde_json::json!([]));
    }

    #[test]
    fn two_element_chain() {
        let r = build_representation(&named::b2()).unwrap();
        assert_eq!(r.omega.len(), 2);
        assert_eq!(r.maps[0].images, vec![0, 0]);
        assert_eq!(r.maps[1].images, vec![0, 1]);
        let dot = String::from_utf8(export_representation(&r, ExportFormat::Dot, None).unwrap()).unwrap();
        assert!(dot.contains("subgraph cluster_0") && dot.contains("p0 -> p1;"));
        assert!(!dot.contains("cluster_1"));
    }

    #[test]
    fn godel_chain() {
        let r = build_representation(&named::g3()).unwrap();
        let sizes: Vec<usize> = r.omega.segments.iter().map(|s| s.classes.len()).collect();
        assert_eq!(sizes, vec![2, 3]);
        // On the segment of g = a: 0 ↦ 0, a ↦ a, 1 ↦ a.
        let a = 1;
        let seg = |x| r.omega.point(1, x);
        assert_eq!(
            [0, 1, 2].map(|x| r.maps[a].apply(seg(x))),
            [seg(0), seg(1), seg(1)]
        );
        let report = verify_representation(&r);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.get(HollandProperty::ResidualUnique), Some(true));
        let json: serde_json::Value =
            serde_json::from_slice(&export_representation(&r, ExportFormat::Json, None).unwrap()).unwrap();
        assert_eq!(json["segments"].as_array().unwrap().len(), 2);
        assert_eq!(json["segments"][1]["classes"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn boolean_square() {
        let r = build_representation(&named::b4()).unwrap();
        assert_eq!(r.omega.segments.len(), 3);
        assert!(verify_representation(&r).passed());
    }

    #[test]
    fn locate_inverts_point() {
        let r = build_representation(&named::l3()).unwrap();
        for p in 0..r.omega.len() {
            let (s, k) = r.omega.locate(p);
            assert_eq!(r.omega.offsets[s] + k, p);
        }
        assert!(verify_representation(&r).passed());
    }

    #[test]
    fn monotone_map_count() {
        // Non-decreasing self-maps of an n-chain: C(2n - 1, n).
        assert_eq!(monotone_maps(1).len(), 1);
        assert_eq!(monotone_maps(3).len(), 10);
        assert_eq!(monotone_maps(6).len(), 462);
    }

    #[test]
    fn bad_format() {
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
