//! Exhaustive generation of finite pseudo hoops, with isomorphism reduction.
//!
//! Every finite pseudo hoop is a bounded lattice under its natural order, so every
//! isomorphism class has a representative whose indices form a linear extension of
//! the order: `0` is the bottom, `size - 1` the unit. The search enumerates such
//! "naturally labelled" lattices first, then fills the product table cell by cell
//! (each cell below the meet of its arguments, monotone, associative), and finally
//! derives the arrows and checks the axioms.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{derive_arrows, validate, Flag, HoopTables, Validation};
use crate::error::{Error, Result};
use crate::{Elem, FiniteHoop};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumOptions {
    pub size: usize,
    pub up_to_iso: bool,
    /// Flags every emitted algebra must have.
    #[serde(default)]
    pub restrict: Vec<Flag>,
    #[serde(default)]
    pub limit: Option<usize>,
}

impl EnumOptions {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            up_to_iso: true,
            restrict: Vec::new(),
            limit: None,
        }
    }

    pub fn labelled(mut self) -> Self {
        self.up_to_iso = false;
        self
    }

    pub fn require(mut self, flag: Flag) -> Self {
        self.restrict.push(flag);
        self
    }
}

/// Bytes identifying an isomorphism class: the lexicographically least
/// `[size, unit, prod.., rimp.., limp..]` over all relabellings that list elements
/// along a linear extension of the order (so the unit is always last).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

fn serialize(m: &FiniteHoop, perm: &[Elem], inv: &[Elem]) -> Vec<u8> {
    let n = m.size();
    let mut out = Vec::with_capacity(2 + 3 * n * n);
    out.push(n as u8);
    out.push(perm[m.unit()] as u8);
    for op in [FiniteHoop::mul, FiniteHoop::rimp, FiniteHoop::limp] {
        for a in 0..n {
            for b in 0..n {
                out.push(perm[op(m, inv[a], inv[b])] as u8);
            }
        }
    }
    out
}

/// Calls `visit(inv)` for every linear extension, where `inv[position] = element`.
fn for_each_linear_extension(m: &FiniteHoop, visit: &mut dyn FnMut(&[Elem])) {
    fn go(m: &FiniteHoop, placed: u64, inv: &mut Vec<Elem>, visit: &mut dyn FnMut(&[Elem])) {
        let n = m.size();
        if inv.len() == n {
            visit(inv);
            return;
        }
        for x in 0..n {
            if placed >> x & 1 == 0 {
                let below = m.down(x).bits() & !(1u64 << x);
                if below & !placed == 0 {
                    inv.push(x);
                    go(m, placed | 1 << x, inv, visit);
                    inv.pop();
                }
            }
        }
    }
    go(m, 0, &mut Vec::with_capacity(m.size()), visit);
}

/// Canonical relabelling (`perm[old] = new`) and the key it produces.
pub fn canonical_labelling(m: &FiniteHoop) -> (Vec<Elem>, CanonicalKey) {
    let n = m.size();
    let mut best: Option<(Vec<u8>, Vec<Elem>)> = None;
    let mut perm = vec![0; n];
    for_each_linear_extension(m, &mut |inv| {
        for (pos, &x) in inv.iter().enumerate() {
            perm[x] = pos;
        }
        let s = serialize(m, &perm, inv);
        if best.as_ref().is_none_or(|(b, _)| s < *b) {
            best = Some((s, perm.clone()));
        }
    });
    let (key, perm) = best.expect("every finite order has a linear extension");
    (perm, CanonicalKey(key))
}

pub fn canonical_form(m: &FiniteHoop) -> CanonicalKey {
    canonical_labelling(m).1
}

/// Iso-invariant profile used to prune candidate images.
fn profile(m: &FiniteHoop, x: Elem) -> (usize, usize, bool, usize, bool) {
    (
        m.down(x).len(),
        m.up(x).len(),
        m.mul(x, x) == x,
        m.stab_index(x),
        x == m.unit(),
    )
}

/// A bijection `a ↦ perm[a]` preserving `⊙`, `→`, `⇝` and the unit, found by
/// backtracking over profile-compatible candidates.
pub fn isomorphism(a: &FiniteHoop, b: &FiniteHoop) -> Option<Vec<Elem>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let pa: Vec<_> = a.elements().map(|x| profile(a, x)).collect();
    let pb: Vec<_> = b.elements().map(|x| profile(b, x)).collect();
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    fn consistent(a: &FiniteHoop, b: &FiniteHoop, map: &[Option<Elem>], x: Elem) -> bool {
        let fx = map[x].unwrap();
        for y in 0..a.size() {
            let Some(fy) = map[y] else { continue };
            for (op_a, op_b) in [
                (a.mul(x, y), b.mul(fx, fy)),
                (a.mul(y, x), b.mul(fy, fx)),
                (a.rimp(x, y), b.rimp(fx, fy)),
                (a.rimp(y, x), b.rimp(fy, fx)),
                (a.limp(x, y), b.limp(fx, fy)),
                (a.limp(y, x), b.limp(fy, fx)),
            ] {
                if let Some(img) = map[op_a] {
                    if img != op_b {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(
        a: &FiniteHoop,
        b: &FiniteHoop,
        pa: &[(usize, usize, bool, usize, bool)],
        pb: &[(usize, usize, bool, usize, bool)],
        x: Elem,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.size();
        if x == n {
            // images of products between mapped elements were checked incrementally,
            // but a product may have been mapped after both factors; recheck fully
            return (0..n).all(|y| consistent(a, b, map, y));
        }
        for c in 0..n {
            if used[c] || pa[x] != pb[c] {
                continue;
            }
            map[x] = Some(c);
            used[c] = true;
            if consistent(a, b, map, x) && go(a, b, pa, pb, x + 1, map, used) {
                return true;
            }
            map[x] = None;
            used[c] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    go(a, b, &pa, &pb, 0, &mut map, &mut used).then(|| map.into_iter().map(Option::unwrap).collect())
}

pub fn are_isomorphic(a: &FiniteHoop, b: &FiniteHoop) -> bool {
    isomorphism(a, b).is_some()
}

/// All lattice orders on `0..n` where `0` is the bottom, `n - 1` the top, and
/// `i ≤ j` implies `i <= j` as integers. Row-major `n × n` boolean matrices.
pub fn natural_lattice_orders(n: usize) -> Vec<Vec<bool>> {
    let mut pairs = Vec::new();
    for i in 1..n.saturating_sub(1) {
        for j in i + 1..n - 1 {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[i] = true; // 0 ≤ i
            leq[i * n + n - 1] = true; // i ≤ top
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(leq[a * n + b] && leq[b * n + c]) || leq[a * n + c]))
        });
        if !transitive {
            continue;
        }
        let has_meets = (0..n).all(|a| {
            (0..n).all(|b| {
                let lbs: Vec<_> = (0..n).filter(|&w| leq[w * n + a] && leq[w * n + b]).collect();
                lbs.iter().any(|&g| lbs.iter().all(|&w| leq[w * n + g]))
            })
        });
        if has_meets {
            out.push(leq);
        }
    }
    out
}

const UNSET: Elem = Elem::MAX;

struct TableSearch<'a> {
    n: usize,
    leq: &'a [bool],
    meet: Vec<Elem>,
    cells: Vec<(Elem, Elem)>,
    prod: Vec<Elem>,
    found: Vec<FiniteHoop>,
}

impl<'a> TableSearch<'a> {
    fn new(n: usize, leq: &'a [bool]) -> Self {
        let top = n - 1;
        let meet = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                let lbs: Vec<_> = (0..n).filter(|&w| leq[w * n + a] && leq[w * n + b]).collect();
                *lbs.iter().find(|&&g| lbs.iter().all(|&w| leq[w * n + g])).unwrap()
            })
            .collect();
        let mut prod = vec![UNSET; n * n];
        let mut cells = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == top {
                    prod[x * n + y] = y;
                } else if y == top {
                    prod[x * n + y] = x;
                } else if x == 0 || y == 0 {
                    prod[x * n + y] = 0;
                } else {
                    cells.push((x, y));
                }
            }
        }
        Self {
            n,
            leq,
            meet,
            cells,
            prod,
            found: Vec::new(),
        }
    }

    fn le(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    fn p(&self, a: Elem, b: Elem) -> Elem {
        self.prod[a * self.n + b]
    }

    /// Monotonicity and associativity over everything assigned so far.
    fn locally_ok(&self, x: Elem, y: Elem) -> bool {
        let n = self.n;
        let v = self.p(x, y);
        for w in 0..n {
            // monotone in the left argument
            let u = self.p(w, y);
            if u != UNSET && ((self.le(w, x) && !self.le(u, v)) || (self.le(x, w) && !self.le(v, u))) {
                return false;
            }
            // monotone in the right argument
            let u = self.p(x, w);
            if u != UNSET && ((self.le(w, y) && !self.le(u, v)) || (self.le(y, w) && !self.le(v, u))) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.p(a, b);
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = self.p(b, c);
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (self.p(ab, c), self.p(a, bc));
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.cells.len() {
            self.leaf();
            return;
        }
        let (x, y) = self.cells[depth];
        let bound = self.meet[x * self.n + y];
        for v in 0..self.n {
            if !self.le(v, bound) {
                continue;
            }
            self.prod[x * self.n + y] = v;
            if self.locally_ok(x, y) {
                self.run(depth + 1);
            }
        }
        self.prod[x * self.n + y] = UNSET;
    }

    fn leaf(&mut self) {
        let n = self.n;
        let Ok((rimp, limp)) = derive_arrows(n, &self.prod, self.leq) else {
            return;
        };
        let rows = |t: &[Elem]| t.chunks(n).map(<[Elem]>::to_vec).collect::<Vec<_>>();
        let t = HoopTables {
            size: n,
            unit: n - 1,
            prod: rows(&self.prod),
            rimp: Some(rows(&rimp)),
            limp: Some(rows(&limp)),
            leq: Some(self.leq.chunks(n).map(<[bool]>::to_vec).collect()),
            zero: None,
            name: None,
        };
        if let Ok(Validation::Valid(m)) = validate(&t) {
            self.found.push(m);
        }
    }
}

/// Every naturally labelled pseudo hoop on `n` elements, in no particular order.
fn search_naturally_labelled(n: usize) -> Vec<FiniteHoop> {
    natural_lattice_orders(n)
        .par_iter()
        .flat_map_iter(|leq| {
            let mut s = TableSearch::new(n, leq);
            s.run(0);
            s.found
        })
        .collect()
}

/// Emits pseudo hoops of the given size.
///
/// With `up_to_iso` there is exactly one algebra per isomorphism class, relabelled
/// canonically and sorted by [`CanonicalKey`]. Without it every naturally labelled
/// algebra is emitted, sorted by canonical key and then by its own tables.
pub fn enumerate_hoops(opts: &EnumOptions) -> Result<Vec<FiniteHoop>> {
    if opts.size == 0 {
        return Err(Error::Contract("enumeration size must be at least 1".into()));
    }
    if opts.size > 8 {
        return Err(Error::Contract(format!(
            "size {} is beyond the exhaustive search range (at most 8)",
            opts.size
        )));
    }
    let raw = search_naturally_labelled(opts.size);
    let mut keyed: Vec<(CanonicalKey, Vec<u8>, FiniteHoop)> = raw
        .into_par_iter()
        .filter(|m| opts.restrict.iter().all(|&f| m.flags().get(f)))
        .map(|m| {
            let (perm, key) = canonical_labelling(&m);
            let identity: Vec<Elem> = m.elements().collect();
            let own = serialize(&m, &identity, &identity);
            if opts.up_to_iso {
                (key, Vec::new(), m.relabel(&perm))
            } else {
                (key, own, m)
            }
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    if opts.up_to_iso {
        keyed.dedup_by(|a, b| a.0 == b.0);
    }
    let mut out: Vec<FiniteHoop> = keyed.into_iter().map(|(_, _, m)| m).collect();
    if let Some(limit) = opts.limit {
        out.truncate(limit);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn small_counts() {
        let count = |n| enumerate_hoops(&EnumOptions::new(n)).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 2);
    }

    #[test]
    fn size_three_is_l3_and_g3() {
        let ms = enumerate_hoops(&EnumOptions::new(3)).unwrap();
        assert!(ms.iter().any(|m| are_isomorphic(m, &named::l3())));
        assert!(ms.iter().any(|m| are_isomorphic(m, &named::g3())));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(&named::t1(), &named::t1()));
        let l3 = named::l3();
        let swapped = l3.relabel(&[1, 0, 2]);
        assert_eq!(isomorphism(&l3, &swapped), Some(vec![1, 0, 2]));
        assert!(!are_isomorphic(&l3, &named::g3()));
    }

    #[test]
    fn canonical_keys() {
        let t1 = canonical_form(&named::t1());
        assert_eq!(t1.as_bytes(), &[1, 0, 0, 0, 0]);
        let l3 = named::l3();
        assert_eq!(canonical_form(&l3.relabel(&[2, 0, 1])), canonical_form(&l3));
        assert_ne!(canonical_form(&named::g3()), canonical_form(&l3));
    }

    #[test]
    fn natural_orders_small() {
        assert_eq!(natural_lattice_orders(1).len(), 1);
        assert_eq!(natural_lattice_orders(3).len(), 1);
        // chain and the diamond
        assert_eq!(natural_lattice_orders(4).len(), 2);
    }

    #[test]
    fn infeasible_restriction_is_empty() {
        let opts = EnumOptions::new(3).require(Flag::Cancellative);
        assert!(enumerate_hoops(&opts).unwrap().is_empty());
    }

    #[test]
    fn limit_truncates() {
        let mut opts = EnumOptions::new(4);
        opts.limit = Some(2);
        assert_eq!(enumerate_hoops(&opts).unwrap().len(), 2);
    }
}
