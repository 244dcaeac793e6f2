//! The curve family on the genus-`g` surface with `n` boundary components.
//!
//! Curves are indexed combinatorially: a central curve `b`, handle curves
//! `b1..b{g-1}`, leg curves `a1..aN` with `N = 2g+n-2`, and for every
//! ordered pair `i != j` of leg indices a curve `c{i}_{j}` running over the
//! legs strictly between `i` and `j` in cyclic order. The boundary
//! components themselves appear as the consecutive-index curves
//! `d_k = c{2g-2+k}_{2g-1+k}` (indices cyclic).
//!
//! [`CurveConfiguration`] carries the pairwise geometric intersection
//! classes and the integer homology data used by the transvection oracle.
//! Both are generated from the combinatorial rules below;
//! [`validate_configuration`] cross-checks the generated data against the
//! relation set.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("degenerate signature (g={g}, n={n}): requires g >= 1 and 2g+n-2 >= 1")]
    DegenerateSignature { g: i64, n: i64 },
    #[error("curve index out of range for signature: {0}")]
    IndexOutOfRange(String),
}

/// Genus, boundary count and the derived leg count `N = 2g+n-2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceSignature {
    genus: u32,
    boundary_count: u32,
    leg_count: u32,
}

/// `make_signature`: validates `(g, n)` and computes `N`.
pub fn make_signature(g: i64, n: i64) -> Result<SurfaceSignature, SurfaceError> {
    if g < 1 || n < 0 || 2 * g + n - 2 < 1 {
        return Err(SurfaceError::DegenerateSignature { g, n });
    }
    Ok(SurfaceSignature {
        genus: g as u32,
        boundary_count: n as u32,
        leg_count: (2 * g + n - 2) as u32,
    })
}

impl SurfaceSignature {
    pub fn new(g: i64, n: i64) -> Result<Self, SurfaceError> {
        make_signature(g, n)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }

    /// The leg count `N = 2g + n - 2`.
    pub fn legs(&self) -> u32 {
        self.leg_count
    }

    /// The unique representative of `m` modulo `N` lying in `1..=N`.
    pub fn cyclic_index(&self, m: i64) -> u32 {
        let n = self.leg_count as i64;
        ((m - 1).rem_euclid(n) + 1) as u32
    }

    /// Generators in canonical order: `b`, `b1..`, `a1..`, `c_i_j` lexicographic.
    pub fn enumerate_generators(&self) -> Vec<CurveId> {
        let mut out = vec![CurveId::B];
        for i in 1..self.genus {
            out.push(CurveId::Bi(i));
        }
        for i in 1..=self.leg_count {
            out.push(CurveId::Ai(i));
        }
        for i in 1..=self.leg_count {
            for j in 1..=self.leg_count {
                if i != j {
                    out.push(CurveId::Cij(i, j));
                }
            }
        }
        out
    }

    /// The generating subset used by the minimal twist presentations:
    /// the chain `a1, b, a2, b1, c2_4, b2, ..., c_{2g-4}_{2g-2}, b_{g-1}`,
    /// then `c1_2` (for g >= 2), the extra legs `a_{2g}..a_N`, and the
    /// boundary curves `d_1..d_{n-1}`.
    pub fn wajnryb_subset(&self) -> Vec<CurveId> {
        let g = self.genus;
        let n = self.boundary_count;
        let nlegs = self.leg_count;
        let mut out = vec![CurveId::Ai(1), CurveId::B];
        if g >= 2 {
            out.push(CurveId::Ai(2));
            out.push(CurveId::Bi(1));
            for i in 2..g {
                out.push(CurveId::Cij(2 * i - 2, 2 * i));
                out.push(CurveId::Bi(i));
            }
            out.push(CurveId::Cij(1, 2));
        }
        for k in 2 * g..=nlegs {
            out.push(CurveId::Ai(k));
        }
        for k in 1..n {
            out.extend(self.boundary_curve(k));
        }
        out
    }

    /// The k-th boundary component `d_k = c_{2g-2+k}_{2g-1+k}`, indices
    /// cyclic. `None` for the single-leg surface, whose boundary curve is
    /// not a member of the generator family.
    pub fn boundary_curve(&self, k: u32) -> Option<CurveId> {
        debug_assert!(k >= 1 && k <= self.boundary_count);
        let g = self.genus as i64;
        let i = self.cyclic_index(2 * g - 2 + k as i64);
        let j = self.cyclic_index(2 * g - 1 + k as i64);
        (i != j).then_some(CurveId::Cij(i, j))
    }

    /// Is `l` strictly inside the cyclic interval walked from `i` to `j`?
    pub fn in_open_interval(&self, i: u32, j: u32, l: u32) -> bool {
        debug_assert!(i != j);
        let mut p = self.cyclic_index(i as i64 + 1);
        while p != j {
            if p == l {
                return true;
            }
            p = self.cyclic_index(p as i64 + 1);
        }
        false
    }

    /// A triple is good when it is not constant and some cyclic rotation
    /// of it is non-decreasing.
    pub fn is_good_triple(&self, i: u32, j: u32, k: u32) -> bool {
        if i == j && j == k {
            return false;
        }
        (i <= j && j <= k) || (j <= k && k <= i) || (k <= i && i <= j)
    }

    /// All good triples in lexicographic order.
    pub fn enumerate_good_triples(&self) -> Vec<(u32, u32, u32)> {
        let n = self.leg_count;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if self.is_good_triple(i, j, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Rank of the homology lattice the twists act on.
    pub fn homology_rank(&self) -> usize {
        if self.boundary_count == 0 {
            2 * self.genus as usize
        } else {
            2 * self.genus as usize + self.boundary_count as usize - 1
        }
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, n={})", self.genus, self.boundary_count)
    }
}

/// One of the twist generator curves.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CurveId {
    /// The central curve meeting every leg curve once.
    B,
    /// Handle curve `b_i`, `1 <= i <= g-1`.
    Bi(u32),
    /// Leg curve `a_i`, `1 <= i <= N`.
    Ai(u32),
    /// Curve `c_{i,j}` over the legs strictly between `i` and `j`.
    Cij(u32, u32),
}

impl CurveId {
    pub fn token(&self) -> String {
        match self {
            CurveId::B => "b".to_string(),
            CurveId::Bi(i) => format!("b{i}"),
            CurveId::Ai(i) => format!("a{i}"),
            CurveId::Cij(i, j) => format!("c{i}_{j}"),
        }
    }

    pub fn in_range(&self, sig: &SurfaceSignature) -> bool {
        let n = sig.legs();
        match *self {
            CurveId::B => true,
            CurveId::Bi(i) => i >= 1 && i + 1 <= sig.genus(),
            CurveId::Ai(i) => i >= 1 && i <= n,
            CurveId::Cij(i, j) => i >= 1 && i <= n && j >= 1 && j <= n && i != j,
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for CurveId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "b" {
            return Ok(CurveId::B);
        }
        if let Some(rest) = s.strip_prefix('c') {
            let (i, j) = rest
                .split_once('_')
                .ok_or_else(|| format!("bad curve token: {s}"))?;
            let i: u32 = i.parse().map_err(|_| format!("bad curve token: {s}"))?;
            let j: u32 = j.parse().map_err(|_| format!("bad curve token: {s}"))?;
            if i == j {
                return Err(format!("bad curve token: {s}"));
            }
            return Ok(CurveId::Cij(i, j));
        }
        if let Some(rest) = s.strip_prefix('b') {
            let i: u32 = rest.parse().map_err(|_| format!("bad curve token: {s}"))?;
            return Ok(CurveId::Bi(i));
        }
        if let Some(rest) = s.strip_prefix('a') {
            let i: u32 = rest.parse().map_err(|_| format!("bad curve token: {s}"))?;
            return Ok(CurveId::Ai(i));
        }
        Err(format!("bad curve token: {s}"))
    }
}

impl Serialize for CurveId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for CurveId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Geometric intersection pattern of a pair of distinct curves.
///
/// `Many` marks pairs meeting in two or more points; no relation is
/// emitted for them.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionClass {
    Zero,
    One,
    Many,
}

fn canonical_pair(x: CurveId, y: CurveId) -> (CurveId, CurveId) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// The combinatorial intersection rule read off the curve picture.
fn intersection_rule(sig: &SurfaceSignature, x: CurveId, y: CurveId) -> IntersectionClass {
    use CurveId::*;
    use IntersectionClass::*;
    let (x, y) = canonical_pair(x, y);
    match (x, y) {
        (B, Bi(_)) => Zero,
        (B, Ai(_)) => One,
        (B, Cij(_, _)) => Zero,
        (Bi(_), Bi(_)) => Zero,
        (Bi(i), Ai(l)) => {
            if l == 2 * i {
                One
            } else {
                Zero
            }
        }
        (Bi(i), Cij(k, l)) => {
            if 2 * i == k || 2 * i == l {
                One
            } else {
                Zero
            }
        }
        (Ai(_), Ai(_)) => Zero,
        (Ai(l), Cij(i, j)) => {
            if sig.in_open_interval(i, j, l) {
                Many
            } else {
                Zero
            }
        }
        (Cij(i, j), Cij(k, l)) => {
            if i == k || i == l || j == k || j == l {
                Zero
            } else if sig.in_open_interval(i, j, k) != sig.in_open_interval(i, j, l) {
                // linked chords cross twice
                Many
            } else {
                Zero
            }
        }
        _ => unreachable!("pairs are canonically ordered"),
    }
}

/// Homology basis layout. For `n >= 1` the lattice is `Z^{2g+n-1}` with
/// basis `e, f, h_1..h_{g-1}, t_1..t_{g-1}, s_1..s_{n-1}`; for `n = 0` the
/// `s` block is absent and the rank is `2g` (the form of a closed surface
/// is non-degenerate, so no smaller lattice admits the required pairings).
struct Basis {
    g: usize,
    rank: usize,
}

impl Basis {
    fn new(sig: &SurfaceSignature) -> Self {
        Basis {
            g: sig.genus() as usize,
            rank: sig.homology_rank(),
        }
    }
    fn e(&self) -> usize {
        0
    }
    fn f(&self) -> usize {
        1
    }
    fn h(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i < self.g);
        1 + i
    }
    fn t(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i < self.g);
        self.g + i
    }
    fn s(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        2 * self.g - 1 + k
    }
}

/// The leg correction vector: odd legs below `2g` are homologous to the
/// core, even legs below `2g` pick up one handle vector each, and the
/// remaining legs pick up one boundary vector each.
fn leg_vector(sig: &SurfaceSignature, basis: &Basis, l: u32) -> Vec<i64> {
    let mut v = vec![0i64; basis.rank];
    let g = sig.genus();
    if l >= 2 * g {
        v[basis.s((l - 2 * g + 1) as usize)] = 1;
    } else if l % 2 == 0 {
        v[basis.h((l / 2) as usize)] = 1;
    }
    v
}

fn homology_class(sig: &SurfaceSignature, basis: &Basis, c: CurveId) -> Vec<i64> {
    let mut v = vec![0i64; basis.rank];
    match c {
        CurveId::B => v[basis.f()] = 1,
        CurveId::Bi(i) => v[basis.t(i as usize)] = 1,
        CurveId::Ai(l) => {
            v = leg_vector(sig, basis, l);
            v[basis.e()] += 1;
        }
        CurveId::Cij(i, j) => {
            let ri = leg_vector(sig, basis, i);
            let rj = leg_vector(sig, basis, j);
            for (k, slot) in v.iter_mut().enumerate() {
                *slot = ri[k] - rj[k];
            }
        }
    }
    v
}

fn pairing_matrix(sig: &SurfaceSignature) -> Vec<Vec<i64>> {
    let basis = Basis::new(sig);
    let mut p = vec![vec![0i64; basis.rank]; basis.rank];
    p[basis.e()][basis.f()] = 1;
    p[basis.f()][basis.e()] = -1;
    for i in 1..basis.g {
        p[basis.h(i)][basis.t(i)] = -1;
        p[basis.t(i)][basis.h(i)] = 1;
    }
    p
}

/// Intersection classes and homology data for the full curve family of a
/// signature. Values are immutable in normal use; the `set_*` methods
/// exist so tests can inject faults.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CurveConfiguration {
    signature: SurfaceSignature,
    rank: usize,
    /// Skew-symmetric algebraic intersection form.
    pairing: Vec<Vec<i64>>,
    /// Integer homology class of each generator curve.
    homology: BTreeMap<CurveId, Vec<i64>>,
    /// Sparse table of non-`Zero` classes, canonically ordered pairs.
    classes: BTreeMap<String, IntersectionClass>,
}

impl CurveConfiguration {
    /// The shipped configuration for a signature.
    pub fn for_signature(sig: &SurfaceSignature) -> Self {
        let basis = Basis::new(sig);
        let gens = sig.enumerate_generators();
        let mut homology = BTreeMap::new();
        for &c in &gens {
            homology.insert(c, homology_class(sig, &basis, c));
        }
        let mut classes = BTreeMap::new();
        for (ix, &x) in gens.iter().enumerate() {
            for &y in gens.iter().skip(ix + 1) {
                let cls = intersection_rule(sig, x, y);
                if cls != IntersectionClass::Zero {
                    classes.insert(pair_key(x, y), cls);
                }
            }
        }
        CurveConfiguration {
            signature: *sig,
            rank: basis.rank,
            pairing: pairing_matrix(sig),
            homology,
            classes,
        }
    }

    pub fn signature(&self) -> &SurfaceSignature {
        &self.signature
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// Symmetric intersection class lookup; absent pairs are `Zero`.
    pub fn intersection_class(&self, x: CurveId, y: CurveId) -> IntersectionClass {
        debug_assert!(x != y, "intersection class of a curve with itself is not queried");
        self.classes
            .get(&pair_key(x, y))
            .copied()
            .unwrap_or(IntersectionClass::Zero)
    }

    pub fn homology_class(&self, c: CurveId) -> Option<&Vec<i64>> {
        self.homology.get(&c)
    }

    /// Algebraic intersection number of two classes.
    pub fn pair_classes(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.pairing[i][j] * yj;
            }
        }
        acc
    }

    pub fn pairing_of(&self, x: CurveId, y: CurveId) -> i64 {
        self.pair_classes(&self.homology[&x], &self.homology[&y])
    }

    /// Fault-injection hook: override an intersection class.
    pub fn set_class(&mut self, x: CurveId, y: CurveId, cls: IntersectionClass) {
        if cls == IntersectionClass::Zero {
            self.classes.remove(&pair_key(x, y));
        } else {
            self.classes.insert(pair_key(x, y), cls);
        }
    }

    /// Fault-injection hook: override a homology class.
    pub fn set_homology_class(&mut self, c: CurveId, v: Vec<i64>) {
        self.homology.insert(c, v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn pair_key(x: CurveId, y: CurveId) -> String {
    let (x, y) = canonical_pair(x, y);
    format!("{x}|{y}")
}

/// Outcome of [`validate_configuration`]: empty means the configuration
/// satisfies every invariant.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cross-checks a configuration: pairing/class compatibility on every
/// pair, boundary-curve centrality, the chain structure of the minimal
/// generating subset, and success of the homology oracle on the full
/// relation set.
pub fn validate_configuration(config: &CurveConfiguration) -> ValidationReport {
    let mut report = ValidationReport::default();
    let sig = config.signature();
    let gens = sig.enumerate_generators();

    let rank = config.rank();
    for (c, v) in gens.iter().filter_map(|c| config.homology_class(*c).map(|v| (c, v))) {
        if v.len() != rank {
            report
                .violations
                .push(format!("homology class of {c} has length {} != rank {rank}", v.len()));
        }
    }
    for c in &gens {
        if config.homology_class(*c).is_none() {
            report.violations.push(format!("missing homology class for {c}"));
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            if config.pairing_matrix()[i][j] != -config.pairing_matrix()[j][i] {
                report
                    .violations
                    .push(format!("pairing matrix is not skew-symmetric at ({i},{j})"));
                break;
            }
        }
    }
    if !report.violations.is_empty() {
        return report;
    }

    for (ix, &x) in gens.iter().enumerate() {
        for &y in gens.iter().skip(ix + 1) {
            let p = config.pairing_of(x, y);
            match config.intersection_class(x, y) {
                IntersectionClass::One if p.abs() != 1 => {
                    report
                        .violations
                        .push(format!("pair ({x},{y}) has class One but pairing {p}"));
                }
                IntersectionClass::Zero if p != 0 => {
                    report
                        .violations
                        .push(format!("pair ({x},{y}) has class Zero but pairing {p}"));
                }
                _ => {}
            }
        }
    }

    // Boundary curves are disjoint from everything and pair to zero.
    for k in 1..=sig.boundary_count() {
        let Some(d) = sig.boundary_curve(k) else { continue };
        let dv = &config.homology[&d];
        for &x in &gens {
            if x != d && config.intersection_class(d, x) != IntersectionClass::Zero {
                report
                    .violations
                    .push(format!("boundary curve {d} is not disjoint from {x}"));
            }
            if config.pair_classes(dv, &config.homology[&x]) != 0 {
                report
                    .violations
                    .push(format!("boundary curve {d} has nonzero pairing with {x}"));
            }
        }
    }

    // Chain structure of the minimal generating subset: consecutive
    // curves of the chain meet once, non-consecutive ones are disjoint;
    // c1_2 attaches to the chain at b1 only.
    let mut chain = vec![CurveId::Ai(1), CurveId::B];
    if sig.genus() >= 2 {
        chain.push(CurveId::Ai(2));
        chain.push(CurveId::Bi(1));
        for i in 2..sig.genus() {
            chain.push(CurveId::Cij(2 * i - 2, 2 * i));
            chain.push(CurveId::Bi(i));
        }
    }
    for (ix, &x) in chain.iter().enumerate() {
        for (iy, &y) in chain.iter().enumerate().skip(ix + 1) {
            let expect = if iy == ix + 1 {
                IntersectionClass::One
            } else {
                IntersectionClass::Zero
            };
            if config.intersection_class(x, y) != expect {
                report
                    .violations
                    .push(format!("chain pair ({x},{y}) has class {:?}, expected {:?}",
                        config.intersection_class(x, y), expect));
            }
        }
    }
    if sig.genus() >= 2 {
        let c12 = CurveId::Cij(1, 2);
        for &x in &chain {
            let expect = if x == CurveId::Bi(1) {
                IntersectionClass::One
            } else {
                IntersectionClass::Zero
            };
            if config.intersection_class(c12, x) != expect {
                report
                    .violations
                    .push(format!("chain attachment ({c12},{x}) has class {:?}, expected {:?}",
                        config.intersection_class(c12, x), expect));
            }
        }
    }

    // Every relation of the presentation must hold under the oracle.
    if report.violations.is_empty() {
        let oracle = crate::homology::check_presentation(config);
        for entry in &oracle.entries {
            if !entry.pass {
                report
                    .violations
                    .push(format!("relation {} fails the homology oracle", entry.name));
            }
        }
    }
    report
}
