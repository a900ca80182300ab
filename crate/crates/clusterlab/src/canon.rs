//! Canonical labeling of small weighted digraphs by individualization and
//! refinement.
//!
//! The canonical form is the lexicographically least row-major serialization
//! of the adjacency matrix over all vertex orderings that respect a given
//! ordered partition. Refinement only discards orderings that can never be
//! minimal for every labeling alike, so the result is a true invariant.

/// Returns `(order, serialization)`, where `order[t]` is the vertex placed at
/// position `t` and `serialization` lists `a[order[s]][order[t]]` row by row.
pub fn canonical_labeling(a: &[Vec<i64>], cells: Vec<Vec<usize>>) -> (Vec<usize>, Vec<i64>) {
    let n = a.len();
    let cells: Vec<Vec<usize>> = cells.into_iter().filter(|c| !c.is_empty()).collect();
    debug_assert_eq!(cells.iter().map(Vec::len).sum::<usize>(), n);
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    let start = refine(a, cells);
    search(a, start, &mut best);
    let (ser, order) = best.unwrap_or_default();
    (order, ser)
}

fn serialize(a: &[Vec<i64>], order: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(order.len() * order.len());
    for &i in order {
        for &j in order {
            out.push(a[i][j]);
        }
    }
    out
}

fn search(a: &[Vec<i64>], cells: Vec<Vec<usize>>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let ser = serialize(a, &order);
        if best.as_ref().map_or(true, |(b, _)| ser < *b) {
            *best = Some((ser, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&u| are_twins(a, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(a, refine(a, next), best);
    }
}

/// Swapping twins is an automorphism fixing everything else, so their
/// subtrees yield identical leaves.
fn are_twins(a: &[Vec<i64>], u: usize, v: usize) -> bool {
    if a[u][v] != a[v][u] {
        return false;
    }
    (0..a.len())
        .filter(|&w| w != u && w != v)
        .all(|w| a[u][w] == a[v][w] && a[w][u] == a[w][v])
}

/// Color refinement: splits cells by the multiset of (cell, out-weight,
/// in-weight) over neighbors until stable. Cell order is determined by the
/// signatures, never by vertex labels.
fn refine(a: &[Vec<i64>], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = a.len();
    loop {
        let mut color = vec![0usize; n];
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                color[v] = ci;
            }
        }
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(n);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<(usize, i64, i64)>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut s: Vec<(usize, i64, i64)> = (0..n)
                        .filter(|&u| u != v && (a[v][u] != 0 || a[u][v] != 0))
                        .map(|u| (color[u], a[v][u], a[u][v]))
                        .collect();
                    s.sort_unstable();
                    (s, v)
                })
                .collect();
            sigs.sort();
            let mut group: Vec<usize> = vec![sigs[0].1];
            for w in sigs.windows(2) {
                if w[0].0 == w[1].0 {
                    group.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                }
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}
