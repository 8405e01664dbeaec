use std::collections::HashMap;

use super::LabelledGraph;

type Pair = (usize, usize);

fn label_key(g: &LabelledGraph, e: usize) -> u64 {
    g.edge(e).label.value().unwrap_or(u64::MAX)
}

/// Sorted label multisets between each unordered vertex pair (loops on the diagonal).
fn pair_labels(g: &LabelledGraph) -> HashMap<Pair, Vec<u64>> {
    let mut m: HashMap<Pair, Vec<u64>> = HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        let key = (e.source.min(e.target), e.source.max(e.target));
        m.entry(key).or_default().push(label_key(g, i));
    }
    for v in m.values_mut() {
        v.sort_unstable();
    }
    m
}

fn signature(g: &LabelledGraph, v: usize) -> (usize, Vec<u64>) {
    let mut ls: Vec<u64> = g.incident(v).iter().map(|&e| label_key(g, e)).collect();
    ls.sort_unstable();
    (g.degree(v), ls)
}

/// Label-preserving isomorphism test that must send `fixed[i].0` to `fixed[i].1`.
/// Edge orientations and ids are ignored.
pub fn isomorphic_fixing(a: &LabelledGraph, b: &LabelledGraph, fixed: &[Pair]) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let la = pair_labels(a);
    let lb = pair_labels(b);
    let sa: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sb: Vec<_> = (0..n).map(|v| signature(b, v)).collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(x, y) in fixed {
        if map[x] != usize::MAX && map[x] != y || (used[y] && map[x] != y) {
            return false;
        }
        map[x] = y;
        used[y] = true;
    }
    // visit order: fixed first, then breadth-first so each vertex meets mapped neighbours
    let mut order: Vec<usize> = (0..n).filter(|&v| map[v] != usize::MAX).collect();
    let mut placed = vec![false; n];
    for &v in &order {
        placed[v] = true;
    }
    let mut head = 0;
    while order.len() < n {
        if head == order.len() {
            let v = (0..n).find(|&v| !placed[v]).expect("unplaced vertex exists");
            placed[v] = true;
            order.push(v);
        }
        let v = order[head];
        head += 1;
        for &e in a.incident(v) {
            let w = a.edge(e).other(v);
            if !placed[w] {
                placed[w] = true;
                order.push(w);
            }
        }
    }

    let get = |m: &HashMap<Pair, Vec<u64>>, x: usize, y: usize| m.get(&(x.min(y), x.max(y))).cloned();
    let consistent = |map: &[usize], x: usize, y: usize| -> bool {
        if sa[x] != sb[y] {
            return false;
        }
        order.iter().all(|&u| {
            let mu = map[u];
            if mu == usize::MAX || (u == x) {
                return true;
            }
            get(&la, x, u) == get(&lb, y, mu)
        }) && get(&la, x, x) == get(&lb, y, y)
    };
    for &(x, y) in fixed {
        if !consistent(&map, x, y) {
            return false;
        }
    }

    fn search(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        if map[x] != usize::MAX {
            return search(k + 1, order, map, used, consistent);
        }
        for y in 0..map.len() {
            if used[y] || !consistent(map, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if search(k + 1, order, map, used, consistent) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    search(0, &order, &mut map, &mut used, &consistent)
}
