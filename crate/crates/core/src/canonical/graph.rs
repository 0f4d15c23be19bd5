//! Coloured graph encoding of totally symmetric squares.

use crate::square::LatinSquare;
use crate::{Error, Result};

/// `V1 = {0..n}` plus one `V2` vertex per block. Arc `(u, v)` records the
/// triple `(u, u, v)` with `u != v`; a block `{u, v, w}` records the triples
/// with three distinct coordinates. Vertices of `V1` with no outgoing arc
/// are idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsGraph {
    pub order: usize,
    pub arcs: Vec<(u8, u8)>,
    pub blocks: Vec<[u8; 3]>,
}

pub fn ts_isomorphism_graph(l: &LatinSquare) -> Result<TsGraph> {
    if !l.is_totally_symmetric() {
        return Err(Error::Precondition("graph encoding needs a totally symmetric square".into()));
    }
    let n = l.order();
    let mut arcs = Vec::new();
    let mut blocks = Vec::new();
    for u in 0..n {
        let v = l.get(u, u);
        if v != u {
            arcs.push((u as u8, v as u8));
        }
        for v in u + 1..n {
            let w = l.get(u, v);
            if w > v {
                blocks.push([u as u8, v as u8, w as u8]);
            }
        }
    }
    Ok(TsGraph { order: n, arcs, blocks })
}

impl TsGraph {
    /// Rebuilds the square.
    pub fn to_square(&self) -> Result<LatinSquare> {
        let n = self.order;
        let mut cells = vec![u8::MAX; n * n];
        for u in 0..n {
            cells[u * n + u] = u as u8;
        }
        for &(u, v) in &self.arcs {
            let (u, v) = (u as usize, v as usize);
            cells[u * n + u] = v as u8;
            cells[u * n + v] = u as u8;
            cells[v * n + u] = u as u8;
        }
        for b in &self.blocks {
            for i in 0..3 {
                let (x, y, z) = (b[i] as usize, b[(i + 1) % 3] as usize, b[(i + 2) % 3] as usize);
                cells[x * n + y] = z as u8;
                cells[y * n + x] = z as u8;
            }
        }
        LatinSquare::from_cells(n, cells)
    }
}

/// Coloured-graph isomorphism by backtracking over the image of `V1`; an
/// isomorphism of these graphs is determined by its action on `V1`.
pub fn ts_graphs_isomorphic(a: &TsGraph, b: &TsGraph) -> bool {
    if a.order != b.order || a.arcs.len() != b.arcs.len() || a.blocks.len() != b.blocks.len() {
        return false;
    }
    let n = a.order;
    let adj = |g: &TsGraph| {
        let mut out = vec![u8::MAX; n];
        let mut blocks = vec![false; n * n * n];
        let mut deg = vec![(0u32, 0u32, 0u32); n];
        for &(u, v) in &g.arcs {
            out[u as usize] = v;
            deg[u as usize].0 += 1;
            deg[v as usize].1 += 1;
        }
        for t in &g.blocks {
            let t = t.map(usize::from);
            for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                blocks[(t[p[0]] * n + t[p[1]]) * n + t[p[2]]] = true;
            }
            for &x in &t {
                deg[x].2 += 1;
            }
        }
        (out, blocks, deg)
    };
    let (out_a, blk_a, deg_a) = adj(a);
    let (out_b, blk_b, deg_b) = adj(b);
    let mut map = vec![u8::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        n: usize,
        map: &mut Vec<u8>,
        used: &mut Vec<bool>,
        oa: &[u8],
        ob: &[u8],
        ba: &[bool],
        bb: &[bool],
        da: &[(u32, u32, u32)],
        db: &[(u32, u32, u32)],
    ) -> bool {
        if k == n {
            return true;
        }
        for y in 0..n {
            if used[y] || da[k] != db[y] {
                continue;
            }
            map[k] = y as u8;
            let ok = (0..=k).all(|u| {
                let mu = map[u] as usize;
                let arc_ok = |x: usize, mx: usize| {
                    let t = oa[x];
                    let expect = if t == u8::MAX || t as usize > k { None } else { Some(map[t as usize]) };
                    match expect {
                        Some(img) => ob[mx] == img,
                        None => t != u8::MAX || ob[mx] == u8::MAX,
                    }
                };
                if !arc_ok(u, mu) {
                    return false;
                }
                (0..=k).all(|v| {
                    let mv = map[v] as usize;
                    ba[(u * n + v) * n + k] == bb[(mu * n + mv) * n + y]
                })
            });
            if ok {
                used[y] = true;
                if extend(k + 1, n, map, used, oa, ob, ba, bb, da, db) {
                    return true;
                }
                used[y] = false;
            }
            map[k] = u8::MAX;
        }
        false
    }

    extend(0, n, &mut map, &mut used, &out_a, &out_b, &blk_a, &blk_b, &deg_a, &deg_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_graph() {
        let l = LatinSquare::cyclic(2);
        let g = ts_isomorphism_graph(&l).unwrap();
        assert!(g.blocks.is_empty());
        assert_eq!(g.arcs, vec![(1, 0)]);
        assert_eq!(g.to_square().unwrap(), l);
    }

    #[test]
    fn rejects_non_ts() {
        assert!(ts_isomorphism_graph(&LatinSquare::cyclic(3)).is_err());
    }
}
