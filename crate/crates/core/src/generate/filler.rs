//! Partial square with triple closure under a fixed set of maps, shared by
//! every backtracking generator.

use crate::canonical::EMPTY;

/// A map on triples; the filler keeps its partial square closed under the
/// group these generate.
#[derive(Clone, Debug)]
pub(crate) enum TripleMap {
    /// `(r, c, s) -> (c, r, s)`
    Transpose,
    /// `(r, c, s) -> (c, s, r)`
    Rotate,
    /// `(r, c, s) -> (alpha r, beta c, gamma s)`
    Isotopism([Vec<u8>; 3]),
}

impl TripleMap {
    #[inline]
    fn image(&self, t: [u8; 3]) -> [u8; 3] {
        match self {
            TripleMap::Transpose => [t[1], t[0], t[2]],
            TripleMap::Rotate => [t[1], t[2], t[0]],
            TripleMap::Isotopism(m) => {
                [m[0][t[0] as usize], m[1][t[1] as usize], m[2][t[2] as usize]]
            }
        }
    }
}

#[derive(Clone)]
pub(crate) struct Filler {
    pub n: usize,
    pub cells: Vec<u8>,
    row_mask: Vec<u64>,
    col_mask: Vec<u64>,
    filled: usize,
    trail: Vec<u16>,
    maps: Vec<TripleMap>,
    queue: Vec<[u8; 3]>,
}

impl Filler {
    pub fn new(n: usize, maps: Vec<TripleMap>) -> Self {
        assert!(n <= 64, "orders above 64 are not supported");
        Filler {
            n,
            cells: vec![EMPTY; n * n],
            row_mask: vec![0; n],
            col_mask: vec![0; n],
            filled: 0,
            trail: Vec::new(),
            maps,
            queue: Vec::new(),
        }
    }

    #[inline]
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let k = self.trail.pop().unwrap() as usize;
            let (r, c) = (k / self.n, k % self.n);
            let s = self.cells[k];
            self.cells[k] = EMPTY;
            self.row_mask[r] &= !(1u64 << s);
            self.col_mask[c] &= !(1u64 << s);
            self.filled -= 1;
        }
    }

    /// Places a triple and its closure. On conflict returns false and
    /// leaves a partial placement; callers undo to their mark.
    pub fn place(&mut self, t: [u8; 3]) -> bool {
        self.queue.clear();
        self.queue.push(t);
        while let Some(t) = self.queue.pop() {
            let (r, c, s) = (t[0] as usize, t[1] as usize, t[2]);
            let k = r * self.n + c;
            let cur = self.cells[k];
            if cur != EMPTY {
                if cur != s {
                    return false;
                }
                continue;
            }
            let bit = 1u64 << s;
            if (self.row_mask[r] | self.col_mask[c]) & bit != 0 {
                return false;
            }
            self.cells[k] = s;
            self.row_mask[r] |= bit;
            self.col_mask[c] |= bit;
            self.filled += 1;
            self.trail.push(k as u16);
            for m in 0..self.maps.len() {
                let img = self.maps[m].image(t);
                self.queue.push(img);
            }
        }
        true
    }

    /// Symbols still allowed in cell `(r, c)`.
    #[inline]
    pub fn candidates(&self, r: usize, c: usize) -> u64 {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        !(self.row_mask[r] | self.col_mask[c]) & full
    }

    /// Most constrained empty cell among rows `< row_limit`; `Some((k,
    /// 0))` flags a dead cell.
    pub fn choose_cell(&self, row_limit: usize) -> Option<(usize, u64)> {
        let n = self.n;
        let mut best: Option<(usize, u64, u32)> = None;
        for r in 0..row_limit.min(n) {
            for c in 0..n {
                let k = r * n + c;
                if self.cells[k] != EMPTY {
                    continue;
                }
                let cand = self.candidates(r, c);
                let cnt = cand.count_ones();
                if cnt <= 1 {
                    return Some((k, cand));
                }
                if best.map_or(true, |b| cnt < b.2) {
                    best = Some((k, cand, cnt));
                }
            }
        }
        best.map(|(k, cand, _)| (k, cand))
    }

    /// Visits every extension where all rows `< row_limit` are full.
    pub fn extend(&mut self, row_limit: usize, leaf: &mut dyn FnMut(&Filler)) {
        match self.choose_cell(row_limit) {
            None => leaf(self),
            Some((k, mut cand)) => {
                let (r, c) = (k / self.n, k % self.n);
                while cand != 0 {
                    let s = cand.trailing_zeros() as u8;
                    cand &= cand - 1;
                    let m = self.mark();
                    if self.place([r as u8, c as u8, s]) {
                        self.extend(row_limit, leaf);
                    }
                    self.undo(m);
                }
            }
        }
    }

    /// Rebuilds a filler (with fresh masks) from a partial cell array.
    pub fn from_cells(n: usize, maps: Vec<TripleMap>, cells: &[u8]) -> Option<Self> {
        let mut f = Filler::new(n, maps);
        for (k, &s) in cells.iter().enumerate() {
            if s != EMPTY && !f.place([(k / n) as u8, (k % n) as u8, s]) {
                return None;
            }
        }
        Some(f)
    }
}
