//! Partially-ordered semirings, classification flags, grade vectors and matrices.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

/// Largest finite carrier we are willing to enumerate cubically.
pub const MAX_ENUMERATION: usize = 64;

/// An element of the active semiring. For finite carriers this is an index
/// into the carrier; for naturals it is the number itself.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade(pub u64);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("carrier too large to enumerate ({0} elements)")]
    CarrierTooLarge(usize),
    #[error("carrier is infinite")]
    Infinite,
    #[error("invalid semiring: {0}")]
    Invalid(String),
    #[error("unknown semiring `{0}`")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub zero_unusable: bool,
    pub one_linear: bool,
    pub zerosumfree: bool,
    pub entire: bool,
    pub linear: bool,
    pub has_lub: bool,
}

#[derive(Debug, Clone)]
struct Tables {
    names: Vec<String>,
    aliases: Vec<(String, u64)>,
    add: Vec<Vec<u64>>,
    mul: Vec<Vec<u64>>,
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone)]
enum Carrier {
    Finite(Tables),
    /// `ordered` selects the usual order; otherwise the order is discrete.
    Naturals { ordered: bool },
}

#[derive(Debug, Clone)]
pub struct Semiring {
    name: String,
    carrier: Carrier,
    zero: Grade,
    one: Grade,
}

impl Semiring {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn zero(&self) -> Grade {
        self.zero
    }

    pub fn one(&self) -> Grade {
        self.one
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Finite(_))
    }

    pub fn is_naturals(&self) -> bool {
        matches!(self.carrier, Carrier::Naturals { .. })
    }

    /// All carrier elements, in enumeration order. None for naturals.
    pub fn elements(&self) -> Option<Vec<Grade>> {
        match &self.carrier {
            Carrier::Finite(t) => Some((0..t.names.len() as u64).map(Grade).collect()),
            Carrier::Naturals { .. } => None,
        }
    }

    pub fn add(&self, a: Grade, b: Grade) -> Grade {
        match &self.carrier {
            Carrier::Finite(t) => Grade(t.add[a.0 as usize][b.0 as usize]),
            Carrier::Naturals { .. } => Grade(a.0.saturating_add(b.0)),
        }
    }

    pub fn mul(&self, a: Grade, b: Grade) -> Grade {
        match &self.carrier {
            Carrier::Finite(t) => Grade(t.mul[a.0 as usize][b.0 as usize]),
            Carrier::Naturals { .. } => Grade(a.0.saturating_mul(b.0)),
        }
    }

    pub fn leq(&self, a: Grade, b: Grade) -> bool {
        match &self.carrier {
            Carrier::Finite(t) => t.leq[a.0 as usize][b.0 as usize],
            Carrier::Naturals { ordered: true } => a.0 <= b.0,
            Carrier::Naturals { ordered: false } => a == b,
        }
    }

    /// A maximal q' with q' + r <= q, ties broken by enumeration order.
    pub fn decrement(&self, q: Grade, r: Grade) -> Option<Grade> {
        match &self.carrier {
            Carrier::Naturals { .. } => q.0.checked_sub(r.0).map(Grade),
            Carrier::Finite(_) => {
                let cands: Vec<Grade> = self
                    .elements()?
                    .into_iter()
                    .filter(|&c| self.leq(self.add(c, r), q))
                    .collect();
                cands
                    .iter()
                    .copied()
                    .find(|&c| !cands.iter().any(|&d| d != c && self.leq(c, d)))
            }
        }
    }

    /// Solutions x of x + d = q (finite carriers only; naturals give at most one).
    pub fn solve_add(&self, d: Grade, q: Grade) -> Vec<Grade> {
        match &self.carrier {
            Carrier::Naturals { .. } => q.0.checked_sub(d.0).map(Grade).into_iter().collect(),
            Carrier::Finite(_) => self
                .elements()
                .unwrap_or_default()
                .into_iter()
                .filter(|&x| self.add(x, d) == q)
                .collect(),
        }
    }

    /// "Positive-or-more": some q with q + 1 <= g.
    pub fn is_usable(&self, g: Grade) -> bool {
        match &self.carrier {
            Carrier::Naturals { .. } => g.0 >= 1,
            Carrier::Finite(_) => self
                .elements()
                .unwrap_or_default()
                .into_iter()
                .any(|q| self.leq(self.add(q, self.one), g)),
        }
    }

    pub fn is_minimal(&self, g: Grade) -> bool {
        match &self.carrier {
            Carrier::Naturals { ordered } => !ordered || g.0 == 0,
            Carrier::Finite(_) => self
                .elements()
                .unwrap_or_default()
                .into_iter()
                .all(|q| q == g || !self.leq(q, g)),
        }
    }

    pub fn lub(&self, a: Grade, b: Grade) -> Option<Grade> {
        match &self.carrier {
            Carrier::Naturals { ordered: true } => Some(Grade(a.0.max(b.0))),
            Carrier::Naturals { ordered: false } => (a == b).then_some(a),
            Carrier::Finite(_) => {
                let ubs: Vec<Grade> = self
                    .elements()?
                    .into_iter()
                    .filter(|&u| self.leq(a, u) && self.leq(b, u))
                    .collect();
                ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.leq(u, v)))
            }
        }
    }

    pub fn parse_grade(&self, s: &str) -> Option<Grade> {
        match &self.carrier {
            Carrier::Naturals { .. } => s.parse::<u64>().ok().map(Grade),
            Carrier::Finite(t) => t
                .names
                .iter()
                .position(|n| n == s)
                .map(|i| Grade(i as u64))
                .or_else(|| t.aliases.iter().find(|(n, _)| n == s).map(|&(_, g)| Grade(g))),
        }
    }

    pub fn show(&self, g: Grade) -> String {
        match &self.carrier {
            Carrier::Naturals { .. } => g.0.to_string(),
            Carrier::Finite(t) => t
                .names
                .get(g.0 as usize)
                .cloned()
                .unwrap_or_else(|| format!("?{}", g.0)),
        }
    }

    pub fn contains(&self, g: Grade) -> bool {
        match &self.carrier {
            Carrier::Naturals { .. } => true,
            Carrier::Finite(t) => (g.0 as usize) < t.names.len(),
        }
    }

    fn enumerable(&self) -> Result<Vec<Grade>, AlgebraError> {
        let els = self.elements().ok_or(AlgebraError::Infinite)?;
        if els.len() > MAX_ENUMERATION {
            return Err(AlgebraError::CarrierTooLarge(els.len()));
        }
        Ok(els)
    }

    pub fn classify(&self) -> Result<Flags, AlgebraError> {
        if let Carrier::Naturals { ordered } = self.carrier {
            return Ok(Flags {
                zero_unusable: true,
                one_linear: true,
                zerosumfree: true,
                entire: true,
                linear: true,
                has_lub: ordered,
            });
        }
        let els = self.enumerable()?;
        let (z, o) = (self.zero, self.one);
        let pairs = || els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b)));
        Ok(Flags {
            zero_unusable: !els.iter().any(|&q| self.leq(self.add(q, o), z)),
            one_linear: !els.iter().any(|&q| q != z && self.leq(self.add(q, o), o)),
            zerosumfree: pairs().all(|(a, b)| self.add(a, b) != z || (a == z && b == z)),
            entire: pairs().all(|(a, b)| self.mul(a, b) != z || a == z || b == z),
            linear: pairs().all(|(a, b)| {
                (self.add(a, b) != o || (a, b) == (o, z) || (a, b) == (z, o))
                    && (self.mul(a, b) != o || (a == o && b == o))
            }),
            has_lub: pairs().all(|(a, b)| self.lub(a, b).is_some()),
        })
    }

    /// Exhaustive check of the semiring and ordered-semiring laws.
    pub fn check_axioms(&self) -> Result<(), String> {
        let els = self.enumerable().map_err(|e| e.to_string())?;
        let (z, o) = (self.zero, self.one);
        let s = |g| self.show(g);
        for &a in &els {
            if self.add(a, z) != a || self.add(z, a) != a {
                return Err(format!("0 is not additive identity at {}", s(a)));
            }
            if self.mul(a, o) != a || self.mul(o, a) != a {
                return Err(format!("1 is not multiplicative identity at {}", s(a)));
            }
            if self.mul(a, z) != z || self.mul(z, a) != z {
                return Err(format!("0 does not annihilate {}", s(a)));
            }
            if !self.leq(a, a) {
                return Err(format!("leq not reflexive at {}", s(a)));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("+ not commutative at {},{}", s(a), s(b)));
                }
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(format!("leq not antisymmetric at {},{}", s(a), s(b)));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("+ not associative at {},{},{}", s(a), s(b), s(c)));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("* not associative at {},{},{}", s(a), s(b), s(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("left distributivity fails at {},{},{}", s(a), s(b), s(c)));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(format!("right distributivity fails at {},{},{}", s(a), s(b), s(c)));
                    }
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Err(format!("leq not transitive at {},{},{}", s(a), s(b), s(c)));
                    }
                    if self.leq(a, b)
                        && !(self.leq(self.add(a, c), self.add(b, c))
                            && self.leq(self.mul(a, c), self.mul(b, c))
                            && self.leq(self.mul(c, a), self.mul(c, b)))
                    {
                        return Err(format!(
                            "order not compatible at {} <= {} with {}",
                            s(a),
                            s(b),
                            s(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    // ---- vectors and matrices ----

    pub fn zeros(&self, n: usize) -> GradeVector {
        GradeVector(vec![self.zero; n])
    }

    pub fn vec_add(&self, a: &GradeVector, b: &GradeVector) -> Result<GradeVector, AlgebraError> {
        self.vec_affine(a, self.one, b)
    }

    pub fn vec_scale(&self, q: Grade, v: &GradeVector) -> GradeVector {
        GradeVector(v.0.iter().map(|&g| self.mul(q, g)).collect())
    }

    /// v0 + q·v1 pointwise.
    pub fn vec_affine(
        &self,
        v0: &GradeVector,
        q: Grade,
        v1: &GradeVector,
    ) -> Result<GradeVector, AlgebraError> {
        if v0.len() != v1.len() {
            return Err(AlgebraError::LengthMismatch(v0.len(), v1.len()));
        }
        Ok(GradeVector(
            v0.0.iter().zip(&v1.0).map(|(&a, &b)| self.add(a, self.mul(q, b))).collect(),
        ))
    }

    pub fn vec_leq(&self, a: &GradeVector, b: &GradeVector) -> bool {
        a.len() == b.len() && a.0.iter().zip(&b.0).all(|(&x, &y)| self.leq(x, y))
    }

    pub fn vec_lub(&self, a: &GradeVector, b: &GradeVector) -> Option<GradeVector> {
        if a.len() != b.len() {
            return None;
        }
        a.0.iter().zip(&b.0).map(|(&x, &y)| self.lub(x, y)).collect::<Option<Vec<_>>>().map(GradeVector)
    }

    pub fn vec_mat_mul(&self, v: &GradeVector, m: &GradeMatrix) -> Result<GradeVector, AlgebraError> {
        if v.len() != m.dim() {
            return Err(AlgebraError::LengthMismatch(v.len(), m.dim()));
        }
        let n = m.dim();
        Ok(GradeVector(
            (0..n)
                .map(|j| (0..n).fold(self.zero, |acc, i| self.add(acc, self.mul(v.0[i], m.rows[i][j]))))
                .collect(),
        ))
    }

    pub fn mat_mul(&self, a: &GradeMatrix, b: &GradeMatrix) -> Result<GradeMatrix, AlgebraError> {
        if a.dim() != b.dim() {
            return Err(AlgebraError::LengthMismatch(a.dim(), b.dim()));
        }
        let rows = a
            .rows
            .iter()
            .map(|r| self.vec_mat_mul(&GradeVector(r.clone()), b).map(|v| v.0))
            .collect::<Result<_, _>>()?;
        Ok(GradeMatrix { rows })
    }

    pub fn identity(&self, n: usize) -> GradeMatrix {
        GradeMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { self.one } else { self.zero }).collect())
                .collect(),
        }
    }

    pub fn zero_matrix(&self, n: usize) -> GradeMatrix {
        GradeMatrix { rows: vec![vec![self.zero; n]; n] }
    }

    pub fn show_vec(&self, v: &GradeVector) -> String {
        let parts: Vec<String> = v.0.iter().map(|&g| self.show(g)).collect();
        format!("({})", parts.join(","))
    }

    pub fn show_matrix(&self, m: &GradeMatrix) -> String {
        let rows: Vec<String> = m
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|&g| self.show(g)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradeVector(pub Vec<Grade>);

impl GradeVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation, written with a diamond in the literature.
    pub fn concat(&self, other: &GradeVector) -> GradeVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GradeVector(v)
    }

    pub fn padded(&self, n: usize, zero: Grade) -> GradeVector {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), zero);
        GradeVector(v)
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.0.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeMatrix {
    pub rows: Vec<Vec<Grade>>,
}

impl GradeMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_strictly_lower_triangular(&self, zero: Grade) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == self.dim() && r[i..].iter().all(|&g| g == zero))
    }
}

// ---- constructors ----

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<u64>> {
    (0..n).map(|a| (0..n).map(|b| f(a, b) as u64).collect()).collect()
}

fn closure(n: usize, base: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in base {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    leq
}

impl Semiring {
    fn finite(name: &str, names: &[&str], add: Vec<Vec<u64>>, mul: Vec<Vec<u64>>, leq: Vec<Vec<bool>>) -> Self {
        Semiring {
            name: name.to_string(),
            carrier: Carrier::Finite(Tables {
                names: names.iter().map(|s| s.to_string()).collect(),
                aliases: Vec::new(),
                add,
                mul,
                leq,
            }),
            zero: Grade(0),
            one: Grade(1),
        }
    }

    fn with_alias(mut self, alias: &str, g: u64) -> Self {
        if let Carrier::Finite(t) = &mut self.carrier {
            t.aliases.push((alias.to_string(), g));
        }
        self
    }

    pub fn trivial() -> Self {
        let mut s = Self::finite("trivial", &["0"], table(1, |_, _| 0), table(1, |_, _| 0), closure(1, &[]));
        s.one = Grade(0);
        s.with_alias("1", 0)
    }

    pub fn boolean_exact() -> Self {
        Self::finite("bool", &["0", "1"], table(2, |a, b| a | b), table(2, |a, b| a & b), closure(2, &[]))
    }

    pub fn boolean_ordered() -> Self {
        let mut s = Self::boolean_exact();
        s.name = "bool-ordered".into();
        if let Carrier::Finite(t) = &mut s.carrier {
            t.leq = closure(2, &[(0, 1)]);
        }
        s
    }

    /// {0, 1, w}: 1 + 1 = w, w absorbs addition, 0 and 1 both below w.
    pub fn linearity() -> Self {
        const W: usize = 2;
        let add = table(3, |a, b| match (a, b) {
            (0, x) | (x, 0) => x,
            _ => W,
        });
        let mul = table(3, |a, b| match (a, b) {
            (0, _) | (_, 0) => 0,
            (1, x) | (x, 1) => x,
            _ => W,
        });
        Self::finite("linearity", &["0", "1", "w"], add, mul, closure(3, &[(0, W), (1, W)]))
            .with_alias("ω", W as u64)
    }

    /// {0, 1, Aff, Rel, w} read as the intervals [0,0], [1,1], [0,1], [1,inf), [0,inf).
    pub fn five_point() -> Self {
        const INF: u64 = u64::MAX;
        let iv: [(u64, u64); 5] = [(0, 0), (1, 1), (0, 1), (1, INF), (0, INF)];
        let enclose = |lo: u64, hi: u64| -> usize {
            // smallest element (by width of the interval) containing [lo, hi]
            (0..5)
                .filter(|&i| iv[i].0 <= lo && hi <= iv[i].1)
                .min_by_key(|&i| (iv[i].1.saturating_sub(iv[i].0), i))
                .expect("w encloses everything")
        };
        let sat_mul = |a: u64, b: u64| if a == 0 || b == 0 { 0 } else { a.saturating_mul(b) };
        let add = table(5, |a, b| enclose(iv[a].0.saturating_add(iv[b].0), iv[a].1.saturating_add(iv[b].1)));
        let mul = table(5, |a, b| enclose(sat_mul(iv[a].0, iv[b].0), sat_mul(iv[a].1, iv[b].1)));
        let leq = closure(5, &[(0, 2), (1, 2), (1, 3), (2, 4), (3, 4)]);
        Self::finite("five-point", &["0", "1", "Aff", "Rel", "w"], add, mul, leq).with_alias("ω", 4)
    }

    pub fn nat() -> Self {
        Semiring { name: "nat".into(), carrier: Carrier::Naturals { ordered: false }, zero: Grade(0), one: Grade(1) }
    }

    pub fn nat_leq() -> Self {
        Semiring { name: "nat-leq".into(), carrier: Carrier::Naturals { ordered: true }, zero: Grade(0), one: Grade(1) }
    }

    /// Four-point diamond: Private below two incomparable levels below Public.
    pub fn security() -> Self {
        Self::from_lattice(&LatticeFile {
            name: Some("security".into()),
            elements: vec!["Private".into(), "Public".into(), "A".into(), "B".into()],
            covers: vec![
                ("Private".into(), "A".into()),
                ("Private".into(), "B".into()),
                ("A".into(), "Public".into()),
                ("B".into(), "Public".into()),
            ],
            private: "Private".into(),
            public: "Public".into(),
        })
        .expect("built-in lattice is valid")
    }

    pub const BUILTIN: &'static [&'static str] =
        &["trivial", "bool", "bool-ordered", "linearity", "five-point", "nat", "nat-leq", "security"];

    pub fn by_name(name: &str) -> Result<Self, AlgebraError> {
        Ok(match name {
            "trivial" => Self::trivial(),
            "bool" | "boolean" | "boolean-exact" => Self::boolean_exact(),
            "bool-ordered" | "boolean-ordered" => Self::boolean_ordered(),
            "linearity" | "linear" => Self::linearity(),
            "five-point" => Self::five_point(),
            "nat" | "naturals" => Self::nat(),
            "nat-leq" => Self::nat_leq(),
            "security" => Self::security(),
            other => return Err(AlgebraError::Unknown(other.to_string())),
        })
    }

    /// A built-in name, or a path to a lattice file.
    pub fn resolve(arg: &str) -> Result<Self, AlgebraError> {
        match Self::by_name(arg) {
            Ok(s) => Ok(s),
            Err(_) if arg.ends_with(".toml") => {
                let text = std::fs::read_to_string(arg)
                    .map_err(|e| AlgebraError::Invalid(format!("{arg}: {e}")))?;
                Self::from_lattice_toml(&text)
            }
            Err(e) => Err(e),
        }
    }

    pub fn from_lattice_toml(text: &str) -> Result<Self, AlgebraError> {
        let file: LatticeFile = toml::from_str(text).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
        Self::from_lattice(&file)
    }

    /// Join is addition, meet is multiplication, Private is 0, Public is 1.
    pub fn from_lattice(file: &LatticeFile) -> Result<Self, AlgebraError> {
        let n = file.elements.len();
        if n == 0 {
            return Err(AlgebraError::Invalid("empty carrier".into()));
        }
        if n > MAX_ENUMERATION {
            return Err(AlgebraError::CarrierTooLarge(n));
        }
        let mut index = BTreeMap::new();
        for (i, e) in file.elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(AlgebraError::Invalid(format!("duplicate element {e}")));
            }
        }
        let idx = |e: &str| index.get(e).copied().ok_or_else(|| AlgebraError::Invalid(format!("unknown element {e}")));
        let base = file.covers.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, AlgebraError>>()?;
        let leq = closure(n, &base);
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(AlgebraError::Invalid(format!("cycle between {} and {}", file.elements[a], file.elements[b])));
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let le = |x: usize, y: usize| if upper { leq[x][y] } else { leq[y][x] };
            let bs: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
            bs.iter().copied().find(|&u| bs.iter().all(|&v| le(u, v)))
        };
        let mut join = vec![vec![0u64; n]; n];
        let mut meet = vec![vec![0u64; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (&file.elements[a], &file.elements[b]);
                join[a][b] = bound(a, b, true).ok_or_else(|| AlgebraError::Invalid(format!("no join of {fa} and {fb}")))? as u64;
                meet[a][b] = bound(a, b, false).ok_or_else(|| AlgebraError::Invalid(format!("no meet of {fa} and {fb}")))? as u64;
            }
        }
        let (p, q) = (idx(&file.private)?, idx(&file.public)?);
        if !(0..n).all(|x| leq[p][x] && leq[x][q]) {
            return Err(AlgebraError::Invalid("Private must be bottom and Public top".into()));
        }
        let s = Semiring {
            name: file.name.clone().unwrap_or_else(|| "lattice".into()),
            carrier: Carrier::Finite(Tables {
                names: file.elements.clone(),
                aliases: vec![("0".into(), p as u64), ("1".into(), q as u64)],
                add: join,
                mul: meet,
                leq,
            }),
            zero: Grade(p as u64),
            one: Grade(q as u64),
        };
        s.check_axioms().map_err(AlgebraError::Invalid)?;
        Ok(s)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct LatticeFile {
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    pub private: String,
    pub public: String,
}
