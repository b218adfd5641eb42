//! Isomorphism-class counts from a brute-force search that shares no code with the
//! enumerator: every product table with bottom `0` and unit `n - 1`, order read off as
//! divisibility, arrows as greatest residua, axioms checked literally, and classes
//! separated by trying every permutation of the middle elements.

use std::collections::BTreeSet;

use hoopkit::enumerate::{enumerate_hoops, EnumOptions};

/// Classes per size, frozen from [`brute_force_classes`].
const FROZEN: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 2), (4, 5), (5, 10)];

fn residua(n: usize, p: &[usize], leq: &[bool], right: bool) -> Option<Vec<usize>> {
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let ok: Vec<usize> = (0..n)
                .filter(|&z| {
                    let v = if right { p[z * n + x] } else { p[x * n + z] };
                    leq[v * n + y]
                })
                .collect();
            let top = *ok.iter().find(|&&g| ok.iter().all(|&z| leq[z * n + g]))?;
            out[x * n + y] = top;
        }
    }
    Some(out)
}

fn is_pseudo_hoop(n: usize, p: &[usize]) -> bool {
    let one = n - 1;
    let m = |x: usize, y: usize| p[x * n + y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return false;
                }
            }
        }
    }
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for z in 0..n {
            leq[m(z, x) * n + x] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && leq[x * n + y] && leq[y * n + x] {
                return false;
            }
            for z in 0..n {
                if leq[x * n + y] && leq[y * n + z] && !leq[x * n + z] {
                    return false;
                }
            }
        }
    }
    let (Some(r), Some(l)) = (residua(n, p, &leq, true), residua(n, p, &leq, false)) else {
        return false;
    };
    let r = |x: usize, y: usize| r[x * n + y];
    let l = |x: usize, y: usize| l[x * n + y];
    for x in 0..n {
        if r(x, x) != one || l(x, x) != one {
            return false;
        }
        for y in 0..n {
            let w = m(r(x, y), x);
            if w != m(r(y, x), y) || w != m(x, l(x, y)) || w != m(y, l(y, x)) {
                return false;
            }
            for z in 0..n {
                if r(m(x, y), z) != r(x, r(y, z)) || l(m(x, y), z) != l(y, l(x, z)) {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn brute_force_classes(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let one = n - 1;
    let free: Vec<(usize, usize)> = (1..one).flat_map(|x| (1..one).map(move |y| (x, y))).collect();
    let mut p = vec![0; n * n];
    for x in 0..n {
        p[x * n + one] = x;
        p[one * n + x] = x;
    }
    let perms: Vec<Vec<usize>> = permutations(&(1..one).collect::<Vec<_>>())
        .into_iter()
        .map(|mid| std::iter::once(0).chain(mid).chain(std::iter::once(one)).collect())
        .collect();
    let mut classes = BTreeSet::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &free {
            p[x * n + y] = c % n;
            c /= n;
        }
        if !is_pseudo_hoop(n, &p) {
            continue;
        }
        let key = perms
            .iter()
            .map(|s| {
                let mut k = vec![0; n * n];
                for x in 0..n {
                    for y in 0..n {
                        k[s[x] * n + s[y]] = s[p[x * n + y]];
                    }
                }
                k
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    classes.len()
}

#[test]
fn oracle_matches_frozen_counts_up_to_four() {
    for &(n, count) in &FROZEN[..4] {
        assert_eq!(brute_force_classes(n), count, "size {n}");
    }
}

#[test]
fn oracle_matches_frozen_count_five() {
    assert_eq!(brute_force_classes(5), FROZEN[4].1);
}

#[test]
fn enumerator_matches_frozen_counts() {
    for (n, count) in FROZEN {
        assert_eq!(enumerate_hoops(&EnumOptions::new(n)).unwrap().len(), count, "size {n}");
    }
}

#[test]
fn oracle_accepts_the_enumerated_tables() {
    for n in 2..=5 {
        for m in enumerate_hoops(&EnumOptions::new(n)).unwrap() {
            let (p, _, _) = m.raw_tables();
            assert!(is_pseudo_hoop(n, p), "{:?}", m.to_tables());
        }
    }
}
