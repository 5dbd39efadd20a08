//! Triangle-weight families: the built-in catalog, evaluation,
//! classification, and the flip-constancy criterion.
//!
//! A weight assigns a number to every triangle `(l, j, r)` with vertices on
//! the polygon. The statistic of interest is the sum of weights over the
//! triangles of a random triangulation. Which machinery applies to a family
//! is decided by [`classify`]: generating functions need integer values,
//! the convolution moment formulas need shift invariance.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{rat, rat_int, rat_to_f64, Rat};
use crate::polygon::{
    boundary_edge_count, triangle_metrics, PolygonError, PolygonSpec, TriangleRef,
};

/// Comparison slack for geometry-valued weights in [`classify`]; exact
/// codomains compare exactly.
const REAL_CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WeightError {
    #[error("bluecount index p={p} out of range 1..={max} for n={n}")]
    BlueCountOutOfRange { p: usize, n: usize, max: usize },
    #[error("custom table is for n={table_n}, queried with n={n}")]
    CustomSizeMismatch { table_n: usize, n: usize },
    #[error("custom table missing triangle ({0},{1},{2})")]
    CustomMissingTriangle(usize, usize, usize),
    #[error("custom table has {got} entries, expected all {expected} triangles of n={n}")]
    CustomIncomplete {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("custom table row {line}: {reason}")]
    CustomParse { line: usize, reason: String },
    #[error("weight '{0}' needs polygon geometry")]
    GeometryRequired(String),
    #[error("cannot parse weight spec {0:?}")]
    UnknownSpec(String),
    #[error("cannot read custom table {path}: {reason}")]
    CustomRead { path: String, reason: String },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Value codomain of a weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codomain {
    Integer,
    Rational,
    Real,
}

/// A weight value: exact rational or geometric real.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightValue {
    Exact(Rat),
    Real(f64),
}

impl WeightValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            WeightValue::Exact(r) => rat_to_f64(r),
            WeightValue::Real(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            WeightValue::Exact(r) => Some(r),
            WeightValue::Real(_) => None,
        }
    }
}

/// Full table of custom weights: one exact value per canonical triangle of a
/// fixed polygon size. Partial tables are rejected outright.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomTable {
    n: usize,
    values: BTreeMap<(usize, usize, usize), Rat>,
    label: String,
}

impl CustomTable {
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Rat)>,
        label: impl Into<String>,
    ) -> Result<Self, WeightError> {
        let mut values = BTreeMap::new();
        for ((l, j, r), v) in entries {
            TriangleRef::new(l, j, r)?;
            if r > n {
                return Err(PolygonError::VertexOutOfRange { index: r, n }.into());
            }
            values.insert((l, j, r), v);
        }
        let expected = n * (n - 1) * (n - 2) / 6;
        if values.len() != expected {
            return Err(WeightError::CustomIncomplete {
                n,
                expected,
                got: values.len(),
            });
        }
        Ok(CustomTable {
            n,
            values,
            label: label.into(),
        })
    }

    /// Parse CSV rows `l,j,r,value` where `value` is `a/b` or an integer.
    pub fn from_csv_str(
        n: usize,
        data: &str,
        label: impl Into<String>,
    ) -> Result<Self, WeightError> {
        let mut entries = Vec::new();
        for (i, line) in data.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(WeightError::CustomParse {
                    line: i + 1,
                    reason: format!("expected 4 fields, got {}", fields.len()),
                });
            }
            let parse_idx = |s: &str| {
                s.parse::<usize>().map_err(|_| WeightError::CustomParse {
                    line: i + 1,
                    reason: format!("bad index {s:?}"),
                })
            };
            let l = parse_idx(fields[0])?;
            let j = parse_idx(fields[1])?;
            let r = parse_idx(fields[2])?;
            let v: Rat = fields[3].parse().map_err(|_| WeightError::CustomParse {
                line: i + 1,
                reason: format!("bad rational {:?}", fields[3]),
            })?;
            entries.push(((l, j, r), v));
        }
        CustomTable::new(n, entries, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn codomain(&self) -> Codomain {
        if self.values.values().all(|v| v.is_integer()) {
            Codomain::Integer
        } else {
            Codomain::Rational
        }
    }
}

/// The weight families.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// 1 for every triangle; the total is the constant `n - 2`.
    ConstOne,
    /// 1 iff exactly one side lies on the polygon boundary.
    OneSide,
    /// 1 iff at least two sides lie on the boundary.
    Ears,
    /// `(w^{j-l} + w^{r-j}) / 2` times the one-side indicator.
    OneSideWeighted(Rat),
    /// 1 iff the lowest vertex is 1; the total is the vertex-1 degree + 1.
    DegreeVertex1,
    /// `j - l`: total inscribed-arc length of the angles at each triangle's
    /// highest vertex.
    BlueSum,
    /// 1 iff `j - l == p`.
    BlueCount(usize),
    /// `(w^{j-l} + w^{r-j} + w^{r-l}) / 3`.
    Curious(Rat),
    Perimeter,
    Area,
    Inradius,
    Custom(CustomTable),
}

/// A triangle-weight family together with its codomain classification.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    kind: WeightKind,
}

impl WeightSpec {
    pub fn new(kind: WeightKind) -> Self {
        WeightSpec { kind }
    }

    pub fn const_one() -> Self {
        Self::new(WeightKind::ConstOne)
    }
    pub fn one_side() -> Self {
        Self::new(WeightKind::OneSide)
    }
    pub fn ears() -> Self {
        Self::new(WeightKind::Ears)
    }
    pub fn one_side_weighted(w: Rat) -> Self {
        Self::new(WeightKind::OneSideWeighted(w))
    }
    pub fn degree_vertex1() -> Self {
        Self::new(WeightKind::DegreeVertex1)
    }
    pub fn blue_sum() -> Self {
        Self::new(WeightKind::BlueSum)
    }
    pub fn blue_count(p: usize) -> Self {
        Self::new(WeightKind::BlueCount(p))
    }
    pub fn curious(w: Rat) -> Self {
        Self::new(WeightKind::Curious(w))
    }
    pub fn perimeter() -> Self {
        Self::new(WeightKind::Perimeter)
    }
    pub fn area() -> Self {
        Self::new(WeightKind::Area)
    }
    pub fn inradius() -> Self {
        Self::new(WeightKind::Inradius)
    }
    pub fn custom(table: CustomTable) -> Self {
        Self::new(WeightKind::Custom(table))
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn codomain(&self) -> Codomain {
        match &self.kind {
            WeightKind::ConstOne
            | WeightKind::OneSide
            | WeightKind::Ears
            | WeightKind::DegreeVertex1
            | WeightKind::BlueSum
            | WeightKind::BlueCount(_) => Codomain::Integer,
            WeightKind::OneSideWeighted(_) | WeightKind::Curious(_) => Codomain::Rational,
            WeightKind::Perimeter | WeightKind::Area | WeightKind::Inradius => Codomain::Real,
            WeightKind::Custom(t) => t.codomain(),
        }
    }

    /// The CLI descriptor, e.g. `ears`, `bluecount:2`, `oneside-w:1/2`.
    pub fn name(&self) -> String {
        match &self.kind {
            WeightKind::ConstOne => "const1".into(),
            WeightKind::OneSide => "oneside".into(),
            WeightKind::Ears => "ears".into(),
            WeightKind::OneSideWeighted(w) => format!("oneside-w:{w}"),
            WeightKind::DegreeVertex1 => "degree".into(),
            WeightKind::BlueSum => "bluesum".into(),
            WeightKind::BlueCount(p) => format!("bluecount:{p}"),
            WeightKind::Curious(w) => format!("curious-w:{w}"),
            WeightKind::Perimeter => "perimeter".into(),
            WeightKind::Area => "area".into(),
            WeightKind::Inradius => "inradius".into(),
            WeightKind::Custom(t) => format!("custom:{}", t.label),
        }
    }

    /// Parse a CLI weight descriptor. `custom:<path>` reads a CSV file of
    /// rows `l,j,r,value` whose polygon size is the largest index present.
    pub fn parse(s: &str) -> Result<Self, WeightError> {
        let parse_rat = |v: &str| -> Result<Rat, WeightError> {
            v.parse::<Rat>()
                .map_err(|_| WeightError::UnknownSpec(s.to_string()))
        };
        match s {
            "const1" => return Ok(Self::const_one()),
            "oneside" => return Ok(Self::one_side()),
            "ears" => return Ok(Self::ears()),
            "degree" => return Ok(Self::degree_vertex1()),
            "bluesum" => return Ok(Self::blue_sum()),
            "perimeter" => return Ok(Self::perimeter()),
            "area" => return Ok(Self::area()),
            "inradius" => return Ok(Self::inradius()),
            _ => {}
        }
        if let Some(v) = s.strip_prefix("oneside-w:") {
            return Ok(Self::one_side_weighted(parse_rat(v)?));
        }
        if let Some(v) = s.strip_prefix("curious-w:") {
            return Ok(Self::curious(parse_rat(v)?));
        }
        if let Some(v) = s.strip_prefix("bluecount:") {
            let p: usize = v
                .parse()
                .map_err(|_| WeightError::UnknownSpec(s.to_string()))?;
            return Ok(Self::blue_count(p));
        }
        if let Some(path) = s.strip_prefix("custom:") {
            let data = std::fs::read_to_string(path).map_err(|e| WeightError::CustomRead {
                path: path.to_string(),
                reason: e.to_string(),
            })?;
            let n = infer_table_size(&data)?;
            let table = CustomTable::from_csv_str(n, &data, path)?;
            return Ok(Self::custom(table));
        }
        Err(WeightError::UnknownSpec(s.to_string()))
    }

    /// Weight of triangle `tr` in `P_n`. Geometry is only consulted for the
    /// real-valued kinds.
    pub fn eval(
        &self,
        n: usize,
        tr: TriangleRef,
        geom: Option<&PolygonSpec>,
    ) -> Result<WeightValue, WeightError> {
        if tr.r > n {
            return Err(PolygonError::VertexOutOfRange { index: tr.r, n }.into());
        }
        let indicator = |b: bool| WeightValue::Exact(rat_int(if b { 1 } else { 0 }));
        Ok(match &self.kind {
            WeightKind::ConstOne => WeightValue::Exact(rat_int(1)),
            WeightKind::OneSide => indicator(boundary_edge_count(n, tr) == 1),
            WeightKind::Ears => indicator(boundary_edge_count(n, tr) >= 2),
            WeightKind::OneSideWeighted(w) => {
                if boundary_edge_count(n, tr) == 1 {
                    let v = (w.pow((tr.j - tr.l) as i32) + w.pow((tr.r - tr.j) as i32)) * rat(1, 2);
                    WeightValue::Exact(v)
                } else {
                    WeightValue::Exact(rat_int(0))
                }
            }
            WeightKind::DegreeVertex1 => indicator(tr.l == 1),
            WeightKind::BlueSum => WeightValue::Exact(rat_int((tr.j - tr.l) as i64)),
            WeightKind::BlueCount(p) => {
                let max = n - 2;
                if *p < 1 || *p > max {
                    return Err(WeightError::BlueCountOutOfRange { p: *p, n, max });
                }
                indicator(tr.j - tr.l == *p)
            }
            WeightKind::Curious(w) => {
                let v = (w.pow((tr.j - tr.l) as i32)
                    + w.pow((tr.r - tr.j) as i32)
                    + w.pow((tr.r - tr.l) as i32))
                    * rat(1, 3);
                WeightValue::Exact(v)
            }
            WeightKind::Perimeter | WeightKind::Area | WeightKind::Inradius => {
                let p = geom.ok_or_else(|| WeightError::GeometryRequired(self.name()))?;
                if p.n() != n {
                    return Err(WeightError::GeometryRequired(format!(
                        "{} (geometry is for n={}, queried n={})",
                        self.name(),
                        p.n(),
                        n
                    )));
                }
                let m = triangle_metrics(p, tr)?;
                WeightValue::Real(match &self.kind {
                    WeightKind::Perimeter => m.perimeter,
                    WeightKind::Area => m.area,
                    _ => m.inradius,
                })
            }
            WeightKind::Custom(t) => {
                if t.n != n {
                    return Err(WeightError::CustomSizeMismatch { table_n: t.n, n });
                }
                let v = t
                    .values
                    .get(&(tr.l, tr.j, tr.r))
                    .ok_or(WeightError::CustomMissingTriangle(tr.l, tr.j, tr.r))?;
                WeightValue::Exact(v.clone())
            }
        })
    }

    /// Exact weight value; errors on real-codomain kinds.
    pub fn eval_exact(&self, n: usize, tr: TriangleRef) -> Result<Rat, WeightError> {
        match self.eval(n, tr, None)? {
            WeightValue::Exact(r) => Ok(r),
            WeightValue::Real(_) => unreachable!("real kinds already failed on geometry"),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn infer_table_size(data: &str) -> Result<usize, WeightError> {
    let mut n = 0;
    for line in data.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(r) = line.split(',').nth(2) {
            if let Ok(r) = r.trim().parse::<usize>() {
                n = n.max(r);
            }
        }
    }
    if n < 3 {
        return Err(WeightError::CustomParse {
            line: 0,
            reason: "no triangle rows found".into(),
        });
    }
    Ok(n)
}

fn all_triangles(n: usize) -> impl Iterator<Item = TriangleRef> {
    (1..=n).flat_map(move |l| {
        (l + 1..=n).flat_map(move |j| (j + 1..=n).map(move |r| TriangleRef { l, j, r }))
    })
}

/// Structural facts about a family at a given polygon size, decided by
/// exhaustive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    /// Every value is an integer (false outright for the real codomain).
    pub integer_valued: bool,
    /// `f(l,j,r) == f(l+1,j+1,r+1)` for all `1 <= l < j < r <= n-1`.
    pub shift_invariant: bool,
    /// The family agrees at sizes `n` and `n-1` on the shared triples.
    pub n_free: bool,
}

/// Classify `f` over the full triangle domain of `P_n`.
pub fn classify(
    f: &WeightSpec,
    n: usize,
    geom: Option<&PolygonSpec>,
) -> Result<Classification, WeightError> {
    let real = f.codomain() == Codomain::Real;
    let eq = |a: &WeightValue, b: &WeightValue| -> bool {
        match (a, b) {
            (WeightValue::Exact(x), WeightValue::Exact(y)) => x == y,
            _ => (a.to_f64() - b.to_f64()).abs() <= REAL_CLASSIFY_TOL,
        }
    };

    let mut integer_valued = !real;
    if !real {
        for tr in all_triangles(n) {
            if !f.eval(n, tr, None)?.as_exact().unwrap().is_integer() {
                integer_valued = false;
                break;
            }
        }
    }

    let mut shift_invariant = true;
    'outer: for tr in all_triangles(n - 1) {
        let shifted = TriangleRef {
            l: tr.l + 1,
            j: tr.j + 1,
            r: tr.r + 1,
        };
        if !eq(&f.eval(n, tr, geom)?, &f.eval(n, shifted, geom)?) {
            shift_invariant = false;
            break 'outer;
        }
    }

    let mut n_free = true;
    if n >= 4 {
        let geom_smaller = if real {
            Some(PolygonSpec::regular(n - 1)?)
        } else {
            None
        };
        for tr in all_triangles(n - 1) {
            match f.eval(n - 1, tr, geom_smaller.as_ref()) {
                Ok(v) => {
                    if !eq(&f.eval(n, tr, geom)?, &v) {
                        n_free = false;
                        break;
                    }
                }
                // e.g. bluecount p = n-2 does not exist at size n-1
                Err(_) => {
                    n_free = false;
                    break;
                }
            }
        }
    }

    Ok(Classification {
        integer_valued,
        shift_invariant,
        n_free,
    })
}

/// The quadrilateral criterion: true iff
/// `f(l,j,i) + f(l,i,r) == f(l,j,r) + f(j,i,r)` for every
/// `l < j < i < r`, which holds iff the total weight is the same for every
/// triangulation. `tol` must be 0 for exact codomains and positive for the
/// real one.
pub fn flip_constancy(
    f: &WeightSpec,
    n: usize,
    tol: f64,
    geom: Option<&PolygonSpec>,
) -> Result<bool, WeightError> {
    let exact = f.codomain() != Codomain::Real;
    for l in 1..=n {
        for j in l + 1..=n {
            for i in j + 1..=n {
                for r in i + 1..=n {
                    let t = |a, b, c| f.eval(n, TriangleRef { l: a, j: b, r: c }, geom);
                    let (flat1, flat2) = (t(l, j, i)?, t(l, i, r)?);
                    let (cross1, cross2) = (t(l, j, r)?, t(j, i, r)?);
                    if exact {
                        let lhs = flat1.as_exact().unwrap() + flat2.as_exact().unwrap();
                        let rhs = cross1.as_exact().unwrap() + cross2.as_exact().unwrap();
                        if lhs != rhs {
                            return Ok(false);
                        }
                    } else {
                        let lhs = flat1.to_f64() + flat2.to_f64();
                        let rhs = cross1.to_f64() + cross2.to_f64();
                        if (lhs - rhs).abs() > tol {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Case-table variant of the ear indicator whose first row carries the extra
/// condition `r < n` and therefore misses the ear `(n-2, n-1, n)`. It
/// disagrees with [`WeightKind::Ears`] exactly there; retained only for the
/// documented-deviation checks.
pub fn ears_case_table(n: usize, tr: TriangleRef) -> u32 {
    let (l, j, r) = (tr.l, tr.j, tr.r);
    let row1 = j == l + 1 && r == l + 2 && r < n;
    let row2 = l == 1 && j == n - 1 && r == n;
    let row3 = l == 1 && j == 2 && r == n;
    u32::from(row1 || row2 || row3)
}
