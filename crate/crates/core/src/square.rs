//! Latin square representation, conjugates, property predicates and the
//! action of isotopisms and paratopisms.

use std::fmt;
use std::str::FromStr;

use crate::perm::{Isotopism, Paratopism, Permutation};
use crate::{Error, Result};

/// An order-`n` Latin square, stored row-major with zero-based symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    /// Builds a square from one-based rows.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotLatin(format!("row {} has {} entries, expected {n}", r + 1, row.len())));
            }
            for &s in row {
                if s == 0 || s > n {
                    return Err(Error::NotLatin(format!("symbol {s} in row {} outside 1..{n}", r + 1)));
                }
                cells.push((s - 1) as u8);
            }
        }
        Self::from_cells(n, cells)
    }

    /// Builds a square from zero-based row-major cells, checking the Latin
    /// property.
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::NotLatin(format!("unsupported order {n}")));
        }
        if cells.len() != n * n {
            return Err(Error::NotLatin(format!("{} cells for order {n}", cells.len())));
        }
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let s = cells[r * n + c] as usize;
                if s >= n {
                    return Err(Error::NotLatin(format!("symbol {} outside 1..{n}", s + 1)));
                }
                if seen[s] {
                    return Err(Error::NotLatin(format!("row {} repeats symbol {}", r + 1, s + 1)));
                }
                seen[s] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let s = cells[r * n + c] as usize;
                if seen[s] {
                    return Err(Error::NotLatin(format!("column {} repeats symbol {}", c + 1, s + 1)));
                }
                seen[s] = true;
            }
        }
        Ok(LatinSquare { n, cells })
    }

    /// Trusted constructor for generator output; validated in debug builds.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u8>) -> Self {
        debug_assert!(Self::from_cells(n, cells.clone()).is_ok(), "generator produced a non-Latin array");
        LatinSquare { n, cells }
    }

    /// Builds a square from a zero-based operation `(i, j) -> k`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..n * n).map(|k| f(k / n, k % n) as u8).collect();
        Self::from_cells(n, cells)
    }

    /// Cayley table of `Z_n`, symbol `((i + j) mod n) + 1`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i + j) % n).expect("cyclic group table")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Zero-based entry.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.n + c] as usize
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u8> {
        self.cells
    }

    /// One-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(|row| row.iter().map(|&s| s as usize + 1).collect()).collect()
    }

    /// Zero-based `(row, column, symbol)` triples.
    pub fn triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        (0..self.n * self.n).map(move |k| [k / self.n, k % self.n, self.cells[k] as usize])
    }

    fn from_triples(n: usize, triples: impl Iterator<Item = [usize; 3]>) -> Self {
        let mut cells = vec![u8::MAX; n * n];
        for [r, c, s] in triples {
            cells[r * n + c] = s as u8;
        }
        Self::from_cells_unchecked(n, cells)
    }

    pub fn conjugate(&self, sigma: Conjugate) -> LatinSquare {
        let p = sigma.positions();
        Self::from_triples(self.n, self.triples().map(|t| [t[p[0]], t[p[1]], t[p[2]]]))
    }

    pub fn transpose(&self) -> LatinSquare {
        self.conjugate(Conjugate::TRANSPOSE)
    }

    /// Conjugates equal to this square, as a sorted list of labels.
    pub fn equal_conjugates(&self) -> Vec<Conjugate> {
        Conjugate::all().into_iter().filter(|&s| self.conjugate(s) == *self).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|r| (r + 1..n).all(|c| self.cells[r * n + c] == self.cells[c * n + r]))
    }

    /// Equal to the `(3,1,2)`- and `(2,3,1)`-conjugates: `L[r][c] = s`
    /// implies `L[c][s] = r`.
    pub fn is_semisymmetric(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|k| {
            let (r, c, s) = (k / n, k % n, self.cells[k] as usize);
            self.cells[c * n + s] as usize == r
        })
    }

    pub fn is_totally_symmetric(&self) -> bool {
        self.is_symmetric() && self.is_semisymmetric()
    }

    pub fn symmetry_type(&self) -> SymmetryType {
        match self.equal_conjugates().len() {
            6 => SymmetryType::TotallySymmetric,
            3 => SymmetryType::SemisymmetricOnly,
            2 if self.is_symmetric() => SymmetryType::SymmetricOnly,
            2 => SymmetryType::TwoConjugatesEqual,
            1 => SymmetryType::None,
            k => unreachable!("{k} equal conjugates cannot occur"),
        }
    }

    pub fn is_reduced(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| self.cells[i] as usize == i && self.cells[i * n] as usize == i)
    }

    pub fn is_diagonal(&self) -> bool {
        let mut seen = vec![false; self.n];
        (0..self.n).all(|i| !std::mem::replace(&mut seen[self.get(i, i)], true))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == i)
    }

    pub fn is_unipotent(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }

    pub fn idempotent_count(&self) -> usize {
        (0..self.n).filter(|&i| self.get(i, i) == i).count()
    }

    /// Zero-based main diagonal.
    pub fn diagonal(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.cells[i * self.n + i]).collect()
    }

    pub fn satisfies(&self, filter: &PropertyFilter) -> bool {
        let sym_ok = match filter.symmetry {
            Symmetry::Any => true,
            Symmetry::Symmetric => self.is_symmetric(),
            Symmetry::Semisymmetric => self.is_semisymmetric(),
            Symmetry::TotallySymmetric => self.is_totally_symmetric(),
        };
        sym_ok
            && filter.shapes.iter().all(|shape| match shape {
                Shape::Reduced => self.is_reduced(),
                Shape::Diagonal => self.is_diagonal(),
                Shape::Idempotent => self.is_idempotent(),
                Shape::Unipotent => self.is_unipotent(),
            })
    }

    /// `L(alpha, beta, gamma)`: the triple `(r, c, s)` becomes
    /// `(r^alpha, c^beta, s^gamma)`.
    pub fn apply_isotopism(&self, iso: &Isotopism) -> Result<LatinSquare> {
        for p in [&iso.alpha, &iso.beta, &iso.gamma] {
            if p.degree() != self.n {
                return Err(Error::DegreeMismatch { expected: self.n, found: p.degree() });
            }
        }
        Ok(self.isotope(iso))
    }

    pub(crate) fn isotope(&self, iso: &Isotopism) -> LatinSquare {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for r in 0..n {
            let ra = iso.alpha.apply(r);
            for c in 0..n {
                cells[ra * n + iso.beta.apply(c)] = iso.gamma.images()[self.get(r, c)];
            }
        }
        LatinSquare { n, cells }
    }

    pub fn apply_isomorphism(&self, rho: &Permutation) -> LatinSquare {
        self.isotope(&Isotopism::isomorphism(rho.clone()))
    }

    /// Conjugate first, then apply the isotopism.
    pub fn apply_paratopism(&self, p: &Paratopism) -> Result<LatinSquare> {
        self.conjugate(p.sigma).apply_isotopism(&p.iso)
    }

    /// The unique symbol permutation `gamma` making a symmetric square
    /// reduced, together with `L(e, e, gamma)`.
    pub fn reduce_by_symbols(&self) -> Result<(LatinSquare, Permutation)> {
        if !self.is_symmetric() {
            return Err(Error::Precondition("reduce_by_symbols needs a symmetric square".into()));
        }
        // gamma sends the symbol in cell (0, j) to j.
        let mut images = vec![0u8; self.n];
        for j in 0..self.n {
            images[self.get(0, j)] = j as u8;
        }
        let gamma = Permutation::from_images_unchecked(images);
        let e = Permutation::identity(self.n);
        let reduced = self.isotope(&Isotopism { alpha: e.clone(), beta: e, gamma: gamma.clone() });
        debug_assert!(reduced.is_reduced() && reduced.is_symmetric());
        Ok((reduced, gamma))
    }

    /// Moves the diagonal of a diagonal square into a new last row and
    /// column and fills the new diagonal with the new symbol `n+1`.
    pub fn prolong(&self) -> Result<LatinSquare> {
        if !self.is_diagonal() {
            return Err(Error::Precondition("prolongation needs a diagonal square".into()));
        }
        let n = self.n;
        let m = n + 1;
        let mut cells = vec![0u8; m * m];
        for r in 0..n {
            for c in 0..n {
                cells[r * m + c] = if r == c { n as u8 } else { self.cells[r * n + c] };
            }
            cells[r * m + n] = self.cells[r * n + r];
            cells[n * m + r] = self.cells[r * n + r];
        }
        cells[n * m + n] = n as u8;
        Ok(LatinSquare::from_cells_unchecked(m, cells))
    }

    /// Inverse of [`LatinSquare::prolong`]. Requires the constant symbol
    /// `n` on the diagonal and cells `(i, n)`, `(n, i)` holding the same
    /// symbol for every `i < n` (zero-based, order `n+1`).
    pub fn antiprolong(&self) -> Result<LatinSquare> {
        let m = self.n;
        if m < 2 {
            return Err(Error::Precondition("anti-prolongation needs order at least 2".into()));
        }
        let n = m - 1;
        for i in 0..m {
            if self.get(i, i) != n {
                return Err(Error::Precondition(format!("cell ({0},{0}) does not hold symbol {m}", i + 1)));
            }
        }
        for i in 0..n {
            if self.get(i, n) != self.get(n, i) {
                return Err(Error::Precondition(format!("cells ({0},{m}) and ({m},{0}) differ", i + 1)));
            }
        }
        let mut cells = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[r * n + c] = if r == c { self.cells[r * m + n] } else { self.cells[r * m + c] };
            }
        }
        LatinSquare::from_cells(n, cells)
    }

    /// Direct product `(a1,b1)(a2,b2) = (a1 a2, b1 b2)` with the pair
    /// `(a, b)` flattened to `a * m + b` (zero-based, `m = other.order()`).
    pub fn direct_product(&self, other: &LatinSquare) -> LatinSquare {
        let (n, m) = (self.n, other.n);
        let nm = n * m;
        let mut cells = vec![0u8; nm * nm];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let s = self.get(a1, a2) * m + other.get(b1, b2);
                        cells[(a1 * m + b1) * nm + a2 * m + b2] = s as u8;
                    }
                }
            }
        }
        LatinSquare::from_cells_unchecked(nm, cells)
    }

    /// Number of 2x2 Latin subsquares.
    pub fn intercalate_count(&self) -> usize {
        let n = self.n;
        let mut count = 0;
        for r1 in 0..n {
            for r2 in r1 + 1..n {
                for c1 in 0..n {
                    for c2 in c1 + 1..n {
                        if self.get(r1, c1) == self.get(r2, c2) && self.get(r1, c2) == self.get(r2, c1) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    /// Number of transversals (cells, one per row and column, with
    /// distinct symbols).
    pub fn transversal_count(&self) -> u64 {
        fn go(sq: &LatinSquare, r: usize, cols: u64, syms: u64) -> u64 {
            if r == sq.n {
                return 1;
            }
            let mut total = 0;
            for c in 0..sq.n {
                let s = sq.get(r, c);
                if cols & (1 << c) == 0 && syms & (1 << s) == 0 {
                    total += go(sq, r + 1, cols | 1 << c, syms | 1 << s);
                }
            }
            total
        }
        assert!(self.n <= 63);
        go(self, 0, 0, 0)
    }

    /// The text format: a line with `n`, then `n` lines of `n`
    /// space-separated one-based symbols.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.rows() {
            let row: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Blank lines and lines starting with `#` are
    /// ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the order".into()))?;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {}", r + 1)))?;
            let row: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            rows.push(row.map_err(|_| Error::Parse(format!("row {} is not numeric", r + 1)))?);
        }
        if lines.next().is_some() {
            return Err(Error::Parse(format!("trailing data after {n} rows")));
        }
        Self::from_rows(&rows)
    }
}

impl FromStr for LatinSquare {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinSquare{:?}", self.rows())
    }
}

/// A conjugate label. `positions()[i]` is the zero-based old coordinate
/// that becomes coordinate `i`; the one-based label `(3,1,2)` turns the
/// triple `(r, c, s)` into `(s, r, c)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conjugate([u8; 3]);

impl Conjugate {
    pub const IDENTITY: Conjugate = Conjugate([0, 1, 2]);
    pub const TRANSPOSE: Conjugate = Conjugate([1, 0, 2]);
    /// `(3,1,2)`: the target of a left autotopism.
    pub const C312: Conjugate = Conjugate([2, 0, 1]);
    pub const C231: Conjugate = Conjugate([1, 2, 0]);
    pub const C132: Conjugate = Conjugate([0, 2, 1]);
    pub const C321: Conjugate = Conjugate([2, 1, 0]);

    /// Zero-based positions.
    pub fn new(positions: [u8; 3]) -> Result<Self> {
        let mut sorted = positions;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(Error::Parse(format!("{positions:?} is not an ordering of three coordinates")));
        }
        Ok(Conjugate(positions))
    }

    pub fn all() -> [Conjugate; 6] {
        [Self::IDENTITY, Self::C132, Self::TRANSPOSE, Self::C231, Self::C312, Self::C321]
    }

    pub fn positions(self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    /// Taking the `self` conjugate and then the `other` conjugate.
    pub fn then(self, other: Conjugate) -> Conjugate {
        let (s, o) = (self.0, other.0);
        Conjugate([s[o[0] as usize], s[o[1] as usize], s[o[2] as usize]])
    }

    pub fn inverse(self) -> Conjugate {
        let mut inv = [0u8; 3];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Conjugate(inv)
    }
}

impl fmt::Display for Conjugate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

impl fmt::Debug for Conjugate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Conjugate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s.chars().filter_map(|c| c.to_digit(10)).map(|d| d as u8).collect();
        if digits.len() != 3 || digits.iter().any(|&d| !(1..=3).contains(&d)) {
            return Err(Error::Parse(format!("bad conjugate label {s:?}")));
        }
        Conjugate::new([digits[0] - 1, digits[1] - 1, digits[2] - 1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryType {
    None,
    SymmetricOnly,
    SemisymmetricOnly,
    /// Equals exactly two conjugates, but not its transpose.
    TwoConjugatesEqual,
    TotallySymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Any,
    Symmetric,
    Semisymmetric,
    TotallySymmetric,
}

impl Symmetry {
    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::Any => "none",
            Symmetry::Symmetric => "symmetric",
            Symmetry::Semisymmetric => "semisymmetric",
            Symmetry::TotallySymmetric => "totally-symmetric",
        }
    }
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "any" => Ok(Symmetry::Any),
            "symmetric" => Ok(Symmetry::Symmetric),
            "semisymmetric" => Ok(Symmetry::Semisymmetric),
            "totally-symmetric" => Ok(Symmetry::TotallySymmetric),
            _ => Err(Error::Parse(format!("unknown symmetry {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Reduced,
    Diagonal,
    Idempotent,
    Unipotent,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Reduced => "reduced",
            Shape::Diagonal => "diagonal",
            Shape::Idempotent => "idempotent",
            Shape::Unipotent => "unipotent",
        }
    }
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(Shape::Reduced),
            "diagonal" => Ok(Shape::Diagonal),
            "idempotent" => Ok(Shape::Idempotent),
            "unipotent" => Ok(Shape::Unipotent),
            _ => Err(Error::Parse(format!("unknown shape {s:?}"))),
        }
    }
}

/// The category of squares being counted: a conjugate symmetry plus shape
/// restrictions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertyFilter {
    pub symmetry: Symmetry,
    shapes: Vec<Shape>,
}

impl PropertyFilter {
    /// Rejects combinations that are empty for every order `n >= 2`:
    /// idempotent with unipotent, idempotent with reduced, unipotent with
    /// diagonal.
    pub fn new(symmetry: Symmetry, shapes: &[Shape]) -> Result<Self> {
        let mut shapes = shapes.to_vec();
        shapes.sort_unstable();
        shapes.dedup();
        let has = |s| shapes.contains(&s);
        let conflicts = [
            (Shape::Idempotent, Shape::Unipotent),
            (Shape::Reduced, Shape::Idempotent),
            (Shape::Diagonal, Shape::Unipotent),
        ];
        for (a, b) in conflicts {
            if has(a) && has(b) {
                return Err(Error::Unsupported(format!("{} and {} are incompatible", a.as_str(), b.as_str())));
            }
        }
        Ok(PropertyFilter { symmetry, shapes })
    }

    pub fn plain(symmetry: Symmetry) -> Self {
        PropertyFilter { symmetry, shapes: Vec::new() }
    }

    pub fn with(symmetry: Symmetry, shape: Shape) -> Self {
        PropertyFilter { symmetry, shapes: vec![shape] }
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn has(&self, shape: Shape) -> bool {
        self.shapes.contains(&shape)
    }
}

impl fmt::Display for PropertyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetry.as_str())?;
        for s in &self.shapes {
            write!(f, "+{}", s.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for PropertyFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('+');
        let symmetry: Symmetry = parts.next().unwrap_or("").parse()?;
        let shapes: Result<Vec<Shape>> = parts.map(str::parse).collect();
        PropertyFilter::new(symmetry, &shapes?)
    }
}
