//! The convex polygon: triangulation validity, diagonal flips, triangle
//! metrics, and exhaustive enumeration.
//!
//! Vertices are 1-based. A pair `(a, b)` with `a < b` is a polygon edge iff
//! `b - a == 1` or `(a, b) == (1, n)`; everything with `b - a >= 2` except
//! `(1, n)` is a potential diagonal. Crossing is decided combinatorially by
//! index interleaving (`a < c < b < d`), which for a convex polygon agrees
//! with the geometric notion.

use std::fmt;
use std::str::FromStr;

use crate::exact::catalan;
use num_traits::ToPrimitive;

/// Largest `n` accepted by exhaustive enumeration unless a caller raises the
/// cap explicitly (`C_10 = 16796` triangulations at the default).
pub const ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} diagonals, got {got}")]
    WrongDiagonalCount { expected: usize, got: usize },
    #[error("invalid diagonal ({a},{b}): {reason}")]
    InvalidDiagonal {
        a: usize,
        b: usize,
        reason: &'static str,
    },
    #[error("duplicate diagonal ({0},{1})")]
    DuplicateDiagonal(usize, usize),
    #[error("crossing ({0},{1})x({2},{3})")]
    Crossing(usize, usize, usize, usize),
    #[error("diagonal ({0},{1}) not present")]
    DiagonalNotPresent(usize, usize),
    #[error("triangle ({0},{1},{2}) is not strictly increasing")]
    NonCanonicalTriangle(usize, usize, usize),
    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("polygon has no geometry")]
    MissingGeometry,
    #[error("vertex list is not strictly convex")]
    NotConvex,
    #[error("n={n} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },
    #[error("bad triangulation text form: {0}")]
    Parse(String),
}

/// A triangle by vertex indices, canonically `l < j < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleRef {
    pub l: usize,
    pub j: usize,
    pub r: usize,
}

impl TriangleRef {
    pub fn new(l: usize, j: usize, r: usize) -> Result<Self, PolygonError> {
        if l < j && j < r && l >= 1 {
            Ok(TriangleRef { l, j, r })
        } else {
            Err(PolygonError::NonCanonicalTriangle(l, j, r))
        }
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.l, self.j, self.r]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.l == v || self.j == v || self.r == v
    }
}

impl fmt::Display for TriangleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.j, self.r)
    }
}

/// True iff `(a, b)` (with `a < b`) lies on the boundary of `P_n`.
pub fn is_polygon_edge(n: usize, a: usize, b: usize) -> bool {
    debug_assert!(a < b);
    b - a == 1 || (a == 1 && b == n)
}

/// Number of sides of the triangle on the polygon boundary (0, 1, 2, or 3).
pub fn boundary_edge_count(n: usize, tr: TriangleRef) -> u32 {
    let mut c = 0;
    if is_polygon_edge(n, tr.l, tr.j) {
        c += 1;
    }
    if is_polygon_edge(n, tr.j, tr.r) {
        c += 1;
    }
    if is_polygon_edge(n, tr.l, tr.r) {
        c += 1;
    }
    c
}

/// The polygon: vertex count plus optional planar geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSpec {
    n: usize,
    vertices: Option<Vec<[f64; 2]>>,
}

impl PolygonSpec {
    /// Regular polygon inscribed in the unit circle; vertex `i` sits at
    /// angle `2π(i-1)/n`.
    pub fn regular(n: usize) -> Result<Self, PolygonError> {
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let verts = (0..n)
            .map(|i| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                [theta.cos(), theta.sin()]
            })
            .collect();
        Ok(PolygonSpec {
            n,
            vertices: Some(verts),
        })
    }

    /// Combinatorial polygon with no geometry; metric weights are
    /// unavailable.
    pub fn combinatorial(n: usize) -> Result<Self, PolygonError> {
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        Ok(PolygonSpec { n, vertices: None })
    }

    /// Explicit vertex list, which must be strictly convex in index order.
    pub fn from_vertices(vertices: Vec<[f64; 2]>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let cross = |i: usize| {
            let a = vertices[i % n];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        };
        let sign = cross(0).signum();
        if sign == 0.0 {
            return Err(PolygonError::NotConvex);
        }
        for i in 1..n {
            let c = cross(i);
            if c == 0.0 || c.signum() != sign {
                return Err(PolygonError::NotConvex);
            }
        }
        Ok(PolygonSpec {
            n,
            vertices: Some(vertices),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_geometry(&self) -> bool {
        self.vertices.is_some()
    }

    /// Coordinates of 1-based vertex `i`.
    pub fn vertex(&self, i: usize) -> Result<[f64; 2], PolygonError> {
        if i < 1 || i > self.n {
            return Err(PolygonError::VertexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        self.vertices
            .as_ref()
            .map(|v| v[i - 1])
            .ok_or(PolygonError::MissingGeometry)
    }
}

/// Euclidean metrics of one triangle of a polygon with geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMetrics {
    pub perimeter: f64,
    pub area: f64,
    pub inradius: f64,
}

/// Perimeter, shoelace area, and inradius (area / semiperimeter) of the
/// triangle `tr` of polygon `p`.
pub fn triangle_metrics(p: &PolygonSpec, tr: TriangleRef) -> Result<TriangleMetrics, PolygonError> {
    let a = p.vertex(tr.l)?;
    let b = p.vertex(tr.j)?;
    let c = p.vertex(tr.r)?;
    let d = |u: [f64; 2], v: [f64; 2]| ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2)).sqrt();
    let perimeter = d(a, b) + d(b, c) + d(a, c);
    let area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs();
    Ok(TriangleMetrics {
        perimeter,
        area,
        inradius: area / (perimeter / 2.0),
    })
}

/// A validated triangulation: `n-3` pairwise noncrossing diagonals and the
/// `n-2` triangles they cut out. Diagonals and triangles are stored sorted,
/// so equal triangulations compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
    triangles: Vec<TriangleRef>,
}

impl Triangulation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn triangles(&self) -> &[TriangleRef] {
        &self.triangles
    }

    /// Fan triangulation with all diagonals incident to `apex`.
    pub fn fan(n: usize, apex: usize) -> Result<Self, PolygonError> {
        if apex < 1 || apex > n {
            return Err(PolygonError::VertexOutOfRange { index: apex, n });
        }
        let mut diagonals = Vec::new();
        for off in 2..n - 1 {
            let other = (apex - 1 + off) % n + 1;
            let (a, b) = if apex < other {
                (apex, other)
            } else {
                (other, apex)
            };
            diagonals.push((a, b));
        }
        validate_triangulation(n, &diagonals)
    }

    /// Apex of the triangle containing the boundary side `(1, n)`.
    pub fn first_apex(&self) -> usize {
        self.triangles
            .iter()
            .find(|t| t.l == 1 && t.r == self.n)
            .map(|t| t.j)
            .expect("a valid triangulation has a triangle on side (1,n)")
    }

    /// Arc lengths `b_t - b_{t-1}` of the fan of triangles at vertex 1,
    /// sorted ascending. The fan chains through boundary vertices
    /// `2 = b_0 < ... < b_K = n`.
    pub fn vertex1_arcs(&self) -> Vec<usize> {
        let mut fan: Vec<&TriangleRef> = self.triangles.iter().filter(|t| t.l == 1).collect();
        fan.sort_by_key(|t| t.j);
        debug_assert!(fan.first().is_some_and(|t| t.j == 2));
        debug_assert!(fan.last().is_some_and(|t| t.r == self.n));
        let mut arcs: Vec<usize> = fan.iter().map(|t| t.r - t.j).collect();
        arcs.sort_unstable();
        arcs
    }

    /// Text form `n;a-b,c-d,...` with diagonals sorted lexicographically.
    pub fn text_form(&self) -> String {
        let body = self
            .diagonals
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("{};{}", self.n, body)
    }

    /// Construct from parts already known to form a valid triangulation
    /// (used by enumeration and sampling, which build by construction).
    pub(crate) fn from_parts(
        n: usize,
        mut diagonals: Vec<(usize, usize)>,
        mut triangles: Vec<TriangleRef>,
    ) -> Self {
        diagonals.sort_unstable();
        triangles.sort_unstable();
        debug_assert_eq!(diagonals.len(), n - 3);
        debug_assert_eq!(triangles.len(), n - 2);
        Triangulation {
            n,
            diagonals,
            triangles,
        }
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_form())
    }
}

impl FromStr for Triangulation {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, PolygonError> {
        let (n_str, body) = s
            .split_once(';')
            .ok_or_else(|| PolygonError::Parse(format!("missing ';' in {s:?}")))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| PolygonError::Parse(format!("bad vertex count in {s:?}")))?;
        let mut diagonals = Vec::new();
        for part in body.split(',').filter(|p| !p.trim().is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| PolygonError::Parse(format!("bad diagonal {part:?}")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| PolygonError::Parse(format!("bad diagonal {part:?}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| PolygonError::Parse(format!("bad diagonal {part:?}")))?;
            diagonals.push((a, b));
        }
        validate_triangulation(n, &diagonals)
    }
}

/// Check a diagonal set and derive the triangle list.
///
/// Pairs may be given in either orientation; the result is canonical
/// (diagonals sorted, triangles sorted lexicographically).
pub fn validate_triangulation(
    n: usize,
    diagonals: &[(usize, usize)],
) -> Result<Triangulation, PolygonError> {
    if n < 3 {
        return Err(PolygonError::TooFewVertices(n));
    }
    let expected = n - 3;
    if diagonals.len() != expected {
        return Err(PolygonError::WrongDiagonalCount {
            expected,
            got: diagonals.len(),
        });
    }

    let mut diags: Vec<(usize, usize)> = Vec::with_capacity(diagonals.len());
    for &(x, y) in diagonals {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if a < 1 || b > n {
            return Err(PolygonError::InvalidDiagonal {
                a,
                b,
                reason: "vertex out of range",
            });
        }
        if a == b {
            return Err(PolygonError::InvalidDiagonal {
                a,
                b,
                reason: "degenerate pair",
            });
        }
        if b - a < 2 || (a == 1 && b == n) {
            return Err(PolygonError::InvalidDiagonal {
                a,
                b,
                reason: "pair is a polygon edge",
            });
        }
        diags.push((a, b));
    }
    diags.sort_unstable();
    for w in diags.windows(2) {
        if w[0] == w[1] {
            return Err(PolygonError::DuplicateDiagonal(w[0].0, w[0].1));
        }
    }
    for (i, &(a, b)) in diags.iter().enumerate() {
        for &(c, d) in &diags[i + 1..] {
            let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if crossing {
                return Err(PolygonError::Crossing(a, b, c, d));
            }
        }
    }

    // Derive triangles by recursive apex search: for each chord (l, r) of
    // the triangulation there is exactly one j with (l,j) and (j,r) chords.
    let mut chord = vec![false; (n + 1) * (n + 1)];
    let idx = |a: usize, b: usize| a * (n + 1) + b;
    for i in 1..n {
        chord[idx(i, i + 1)] = true;
    }
    chord[idx(1, n)] = true;
    for &(a, b) in &diags {
        chord[idx(a, b)] = true;
    }
    let mut triangles = Vec::with_capacity(n - 2);
    let mut stack = vec![(1usize, n)];
    while let Some((l, r)) = stack.pop() {
        if r - l < 2 {
            continue;
        }
        let j = (l + 1..r)
            .find(|&j| chord[idx(l, j)] && chord[idx(j, r)])
            .expect("noncrossing diagonal set of full cardinality always splits");
        triangles.push(TriangleRef { l, j, r });
        stack.push((j, r));
        stack.push((l, j));
    }
    triangles.sort_unstable();
    debug_assert_eq!(triangles.len(), n - 2);

    Ok(Triangulation {
        n,
        diagonals: diags,
        triangles,
    })
}

/// Replace diagonal `d` by the opposite diagonal of the quadrilateral formed
/// by its two adjacent triangles.
pub fn flip(t: &Triangulation, d: (usize, usize)) -> Result<Triangulation, PolygonError> {
    let d = if d.0 < d.1 { d } else { (d.1, d.0) };
    if !t.diagonals.contains(&d) {
        return Err(PolygonError::DiagonalNotPresent(d.0, d.1));
    }
    let adjacent: Vec<&TriangleRef> = t
        .triangles
        .iter()
        .filter(|tr| tr.contains(d.0) && tr.contains(d.1))
        .collect();
    debug_assert_eq!(adjacent.len(), 2);
    let opposite = |tr: &TriangleRef| {
        tr.vertices()
            .into_iter()
            .find(|&v| v != d.0 && v != d.1)
            .unwrap()
    };
    let u = opposite(adjacent[0]);
    let v = opposite(adjacent[1]);
    let new_d = if u < v { (u, v) } else { (v, u) };
    let diagonals: Vec<(usize, usize)> = t
        .diagonals
        .iter()
        .copied()
        .filter(|&x| x != d)
        .chain(std::iter::once(new_d))
        .collect();
    validate_triangulation(t.n, &diagonals)
}

fn visit_rec<F: FnMut(&Triangulation)>(
    n: usize,
    stack: &mut Vec<(usize, usize)>,
    diags: &mut Vec<(usize, usize)>,
    tris: &mut Vec<TriangleRef>,
    f: &mut F,
) {
    let Some((l, r)) = stack.pop() else {
        f(&Triangulation::from_parts(n, diags.clone(), tris.clone()));
        return;
    };
    if r - l >= 2 {
        for j in l + 1..r {
            let mut added = 0;
            if j - l >= 2 {
                diags.push((l, j));
                added += 1;
            }
            if r - j >= 2 {
                diags.push((j, r));
                added += 1;
            }
            tris.push(TriangleRef { l, j, r });
            stack.push((j, r));
            stack.push((l, j));
            visit_rec(n, stack, diags, tris, f);
            stack.pop();
            stack.pop();
            tris.pop();
            for _ in 0..added {
                diags.pop();
            }
        }
    } else {
        visit_rec(n, stack, diags, tris, f);
    }
    stack.push((l, r));
}

/// Visit every triangulation of `P_n` in the deterministic first-triangle
/// order: at each interval `(l, r)` the apex `j` ascends, and the left
/// subinterval is expanded before the right one.
pub fn visit_triangulations<F: FnMut(&Triangulation)>(n: usize, f: F) -> Result<(), PolygonError> {
    visit_triangulations_with_cap(n, ENUMERATION_CAP, f)
}

/// As [`visit_triangulations`] with an explicit cap override.
pub fn visit_triangulations_with_cap<F: FnMut(&Triangulation)>(
    n: usize,
    cap: usize,
    mut f: F,
) -> Result<(), PolygonError> {
    if n < 3 {
        return Err(PolygonError::TooFewVertices(n));
    }
    if n > cap {
        return Err(PolygonError::EnumerationCapExceeded { n, cap });
    }
    let mut stack = vec![(1usize, n)];
    visit_rec(n, &mut stack, &mut Vec::new(), &mut Vec::new(), &mut f);
    Ok(())
}

/// Visit only the triangulations whose `(1, n)`-triangle has apex `j`
/// (the unit of work for parallel enumeration). No cap check.
pub(crate) fn visit_split<F: FnMut(&Triangulation)>(n: usize, j: usize, mut f: F) {
    debug_assert!(n >= 3 && j > 1 && j < n);
    let mut diags = Vec::new();
    if j >= 3 {
        diags.push((1, j));
    }
    if n - j >= 2 {
        diags.push((j, n));
    }
    let mut tris = vec![TriangleRef { l: 1, j, r: n }];
    let mut stack = vec![(j, n), (1, j)];
    visit_rec(n, &mut stack, &mut diags, &mut tris, &mut f);
}

/// All triangulations of `P_n`, collected in enumeration order. Yields
/// exactly `C_{n-2}` distinct triangulations.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>, PolygonError> {
    let expected = catalan(n.saturating_sub(2))
        .to_usize()
        .expect("triangulation count fits in usize at enumeration scale");
    let mut out = Vec::with_capacity(expected);
    visit_triangulations(n, |t| out.push(t.clone()))?;
    debug_assert_eq!(out.len(), expected);
    Ok(out)
}
