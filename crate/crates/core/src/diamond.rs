//! Cohomology tables: Hodge diamonds, Betti vectors and the partially
//! determined Dolbeault / Bott–Chern / Aeppli tables, together with the
//! reference tables of projective spaces, curves and primary Hopf manifolds.
//!
//! Reads outside `[0,n]²` (or `[0,2n]` for Betti vectors) return 0 so that the
//! shifted sums of the blow-up formulas need no bounds bookkeeping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Full table of Hodge numbers `h^{p,q}`, `0 <= p, q <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiamondJson", into = "DiamondJson")]
pub struct HodgeDiamond {
    n: usize,
    compact: bool,
    h: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DiamondJson {
    n: usize,
    compact: bool,
    #[serde(default)]
    entries: Vec<[u64; 3]>,
}

impl TryFrom<DiamondJson> for HodgeDiamond {
    type Error = Error;

    fn try_from(json: DiamondJson) -> Result<Self> {
        let entries = json
            .entries
            .into_iter()
            .map(|[p, q, v]| (p as usize, q as usize, v));
        HodgeDiamond::from_entries(json.n, json.compact, entries)
    }
}

impl From<HodgeDiamond> for DiamondJson {
    fn from(d: HodgeDiamond) -> Self {
        DiamondJson {
            n: d.n,
            compact: d.compact,
            entries: d
                .nonzero_entries()
                .map(|(p, q, v)| [p as u64, q as u64, v])
                .collect(),
        }
    }
}

impl HodgeDiamond {
    pub fn zeros(n: usize, compact: bool) -> Self {
        Self {
            n,
            compact,
            h: vec![0; (n + 1) * (n + 1)],
        }
    }

    /// Builds a diamond from `(p, q, value)` triples; unlisted entries are 0.
    /// A compact diamond must be Serre-symmetric.
    pub fn from_entries<I>(n: usize, compact: bool, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut d = Self::zeros(n, false);
        for (p, q, v) in entries {
            if p > n || q > n {
                return Err(Error::EntryOutOfRange { n, p, q });
            }
            d.h[p * (n + 1) + q] = v;
        }
        d.with_compact(compact)
    }

    pub fn from_fn(n: usize, compact: bool, f: impl Fn(usize, usize) -> u64) -> Result<Self> {
        let mut d = Self::zeros(n, false);
        for p in 0..=n {
            for q in 0..=n {
                d.h[p * (n + 1) + q] = f(p, q);
            }
        }
        d.with_compact(compact)
    }

    /// Sets the compactness flag, enforcing Serre symmetry when it is set.
    pub fn with_compact(mut self, compact: bool) -> Result<Self> {
        if compact {
            self.check_serre()?;
        }
        self.compact = compact;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// `h^{p,q}`, or 0 outside `[0,n]²`.
    pub fn get(&self, p: isize, q: isize) -> u64 {
        let n = self.n as isize;
        if p < 0 || q < 0 || p > n || q > n {
            0
        } else {
            self.h[p as usize * (self.n + 1) + q as usize]
        }
    }

    pub fn entry(&self, p: usize, q: usize) -> u64 {
        self.get(p as isize, q as isize)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let m = self.n + 1;
        self.h
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| (i / m, i % m, v))
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(|&v| v == 0)
    }

    pub fn check_serre(&self) -> Result<()> {
        let n = self.n;
        for p in 0..=n {
            for q in 0..=n {
                let (left, right) = (self.entry(p, q), self.entry(n - p, n - q));
                if left != right {
                    return Err(Error::SerreAsymmetry { p, q, left, right });
                }
            }
        }
        Ok(())
    }

    pub fn is_serre_symmetric(&self) -> bool {
        self.check_serre().is_ok()
    }

    /// `out(p,q) = in(n−p, n−q)`.
    pub fn serre_dual(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, self.compact);
        for p in 0..=n {
            for q in 0..=n {
                out.h[p * (n + 1) + q] = self.entry(n - p, n - q);
            }
        }
        out
    }

    /// `s_k = Σ_{p+q=k} h^{p,q}` for `k = 0..=2n`.
    pub fn hodge_sums(&self) -> Vec<u64> {
        let mut s = vec![0; 2 * self.n + 1];
        for (p, q, v) in self.nonzero_entries() {
            s[p + q] += v;
        }
        s
    }
}

/// Betti numbers `b_0..b_{2n}` of a complex `n`-fold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BettiJson", into = "BettiJson")]
pub struct BettiVector {
    n: usize,
    compact: bool,
    b: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    n: usize,
    compact: bool,
    b: Vec<u64>,
}

impl TryFrom<BettiJson> for BettiVector {
    type Error = Error;

    fn try_from(json: BettiJson) -> Result<Self> {
        BettiVector::new(json.n, json.compact, json.b)
    }
}

impl From<BettiVector> for BettiJson {
    fn from(b: BettiVector) -> Self {
        BettiJson {
            n: b.n,
            compact: b.compact,
            b: b.b,
        }
    }
}

impl BettiVector {
    pub fn new(n: usize, compact: bool, b: Vec<u64>) -> Result<Self> {
        if b.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * n + 1,
                got: b.len(),
            });
        }
        let v = Self { n, compact: false, b };
        v.with_compact(compact)
    }

    pub fn zeros(n: usize, compact: bool) -> Self {
        Self {
            n,
            compact,
            b: vec![0; 2 * n + 1],
        }
    }

    pub fn with_compact(mut self, compact: bool) -> Result<Self> {
        if compact {
            self.check_poincare()?;
        }
        self.compact = compact;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// `b_k`, or 0 outside `[0, 2n]`.
    pub fn get(&self, k: isize) -> u64 {
        if k < 0 || k as usize >= self.b.len() {
            0
        } else {
            self.b[k as usize]
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.b
    }

    pub fn check_poincare(&self) -> Result<()> {
        let top = 2 * self.n;
        for k in 0..=top {
            let (left, right) = (self.b[k], self.b[top - k]);
            if left != right {
                return Err(Error::PoincareAsymmetry { k, left, right });
            }
        }
        Ok(())
    }

    pub fn is_poincare_symmetric(&self) -> bool {
        self.check_poincare().is_ok()
    }

    /// `out_k = in_{2n−k}`.
    pub fn poincare_dual(&self) -> Self {
        let mut b = self.b.clone();
        b.reverse();
        Self {
            n: self.n,
            compact: self.compact,
            b,
        }
    }
}

/// Entry of a Dolbeault table of an open manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DolbeaultEntry {
    Defined(u64),
    Undefined,
}

/// Dolbeault numbers of a non-compact manifold, some of which are infinite or
/// not determined (only `q >= 1` for the modified ball).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialDolbeaultTable {
    n: usize,
    #[serde(serialize_with = "serialize_dolbeault_entries")]
    entries: Vec<DolbeaultEntry>,
}

fn serialize_dolbeault_entries<S: serde::Serializer>(
    entries: &[DolbeaultEntry],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let json: Vec<Option<u64>> = entries
        .iter()
        .map(|e| match e {
            DolbeaultEntry::Defined(v) => Some(*v),
            DolbeaultEntry::Undefined => None,
        })
        .collect();
    json.serialize(s)
}

impl PartialDolbeaultTable {
    pub fn undefined(n: usize) -> Self {
        Self {
            n,
            entries: vec![DolbeaultEntry::Undefined; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, p: usize, q: usize, e: DolbeaultEntry) {
        assert!(p <= self.n && q <= self.n, "entry ({p},{q}) out of range");
        self.entries[p * (self.n + 1) + q] = e;
    }

    /// Out-of-range reads are `Defined(0)`.
    pub fn get(&self, p: isize, q: isize) -> DolbeaultEntry {
        let n = self.n as isize;
        if p < 0 || q < 0 || p > n || q > n {
            DolbeaultEntry::Defined(0)
        } else {
            self.entries[p as usize * (self.n + 1) + q as usize]
        }
    }

    pub fn defined(&self, p: usize, q: usize) -> Result<u64> {
        match self.get(p as isize, q as isize) {
            DolbeaultEntry::Defined(v) => Ok(v),
            DolbeaultEntry::Undefined => Err(Error::MissingEntry { p, q }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HermitianKind {
    BottChern,
    Aeppli,
}

impl HermitianKind {
    pub fn dual(self) -> Self {
        match self {
            HermitianKind::BottChern => HermitianKind::Aeppli,
            HermitianKind::Aeppli => HermitianKind::BottChern,
        }
    }
}

/// State of a Bott–Chern or Aeppli number.
///
/// `EqualsHopfHat` means the number is known to coincide with the one of the
/// modified Hopf manifold, whose value is itself not determined here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermitianEntry {
    Known(u64),
    EqualsHopfHat,
    Unknown,
}

#[derive(Serialize, Deserialize)]
struct HermitianEntryJson {
    p: usize,
    q: usize,
    state: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct HermitianTableJson {
    n: usize,
    kind: HermitianKind,
    entries: Vec<HermitianEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HermitianTableJson", into = "HermitianTableJson")]
pub struct PartialHermitianTable {
    n: usize,
    kind: HermitianKind,
    entries: Vec<HermitianEntry>,
}

impl TryFrom<HermitianTableJson> for PartialHermitianTable {
    type Error = Error;

    fn try_from(json: HermitianTableJson) -> Result<Self> {
        let mut t = PartialHermitianTable::unknown(json.n, json.kind);
        for e in json.entries {
            if e.p > json.n || e.q > json.n {
                return Err(Error::EntryOutOfRange {
                    n: json.n,
                    p: e.p,
                    q: e.q,
                });
            }
            let entry = match (e.state.as_str(), e.value) {
                ("known", Some(v)) => HermitianEntry::Known(v),
                ("known", None) => {
                    return Err(Error::Parse(format!("known entry ({},{}) without value", e.p, e.q)))
                }
                ("equals_hopf_hat", _) => HermitianEntry::EqualsHopfHat,
                ("unknown", _) => HermitianEntry::Unknown,
                (other, _) => return Err(Error::Parse(format!("unknown entry state {other:?}"))),
            };
            t.set(e.p, e.q, entry);
        }
        Ok(t)
    }
}

impl From<PartialHermitianTable> for HermitianTableJson {
    fn from(t: PartialHermitianTable) -> Self {
        let m = t.n + 1;
        let entries = t
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let (state, value) = match e {
                    HermitianEntry::Known(v) => ("known", Some(*v)),
                    HermitianEntry::EqualsHopfHat => ("equals_hopf_hat", None),
                    HermitianEntry::Unknown => ("unknown", None),
                };
                HermitianEntryJson {
                    p: i / m,
                    q: i % m,
                    state: state.to_string(),
                    value,
                }
            })
            .collect();
        HermitianTableJson {
            n: t.n,
            kind: t.kind,
            entries,
        }
    }
}

impl PartialHermitianTable {
    pub fn unknown(n: usize, kind: HermitianKind) -> Self {
        Self {
            n,
            kind,
            entries: vec![HermitianEntry::Unknown; (n + 1) * (n + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> HermitianKind {
        self.kind
    }

    pub fn set(&mut self, p: usize, q: usize, e: HermitianEntry) {
        assert!(p <= self.n && q <= self.n, "entry ({p},{q}) out of range");
        self.entries[p * (self.n + 1) + q] = e;
    }

    pub fn get(&self, p: usize, q: usize) -> HermitianEntry {
        assert!(p <= self.n && q <= self.n, "entry ({p},{q}) out of range");
        self.entries[p * (self.n + 1) + q]
    }

    /// Bott–Chern ↔ Aeppli duality: `out(p,q) = in(n−p, n−q)` with the kind
    /// swapped. Involutive.
    pub fn index_dual(&self) -> Self {
        let n = self.n;
        let mut out = Self::unknown(n, self.kind.dual());
        for p in 0..=n {
            for q in 0..=n {
                out.set(p, q, self.get(n - p, n - q));
            }
        }
        out
    }

    pub fn known_entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let m = self.n + 1;
        self.entries.iter().enumerate().filter_map(move |(i, e)| match e {
            HermitianEntry::Known(v) => Some((i / m, i % m, *v)),
            _ => None,
        })
    }
}

/// Checks that `aeppli` is the index dual of `bc`: same state, and same value
/// where known, at `(p,q)` of `bc` and `(n−p,n−q)` of `aeppli`.
pub fn check_hermitian_duality(
    bc: &PartialHermitianTable,
    aeppli: &PartialHermitianTable,
) -> Result<()> {
    if bc.kind() != HermitianKind::BottChern || aeppli.kind() != HermitianKind::Aeppli {
        return Err(Error::Duality("expected a Bott–Chern and an Aeppli table".into()));
    }
    if bc.n() != aeppli.n() {
        return Err(Error::DimensionMismatch {
            expected: bc.n(),
            got: aeppli.n(),
        });
    }
    let n = bc.n();
    for p in 0..=n {
        for q in 0..=n {
            let (a, b) = (bc.get(p, q), aeppli.get(n - p, n - q));
            if a != b {
                return Err(Error::Duality(format!(
                    "BC({p},{q}) = {a:?} but A({},{}) = {b:?}",
                    n - p,
                    n - q
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Point,
    Cpn,
    RiemannSurface,
    HopfHodge,
    HopfBetti,
    HopfBc,
    CpnBetti,
}

impl FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "point" => StandardKind::Point,
            "cpn" => StandardKind::Cpn,
            "riemann_surface" => StandardKind::RiemannSurface,
            "hopf_hodge" => StandardKind::HopfHodge,
            "hopf_betti" => StandardKind::HopfBetti,
            "hopf_bc" => StandardKind::HopfBc,
            "cpn_betti" => StandardKind::CpnBetti,
            other => return Err(Error::UnknownKind(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardTable {
    Diamond(HodgeDiamond),
    Betti(BettiVector),
    Hermitian(PartialHermitianTable),
}

/// Reference tables. `param` is the complex dimension, or the genus for
/// `RiemannSurface`; it is ignored for `Point`.
pub fn standard_table(kind: StandardKind, param: usize) -> Result<StandardTable> {
    let needs_dim = !matches!(kind, StandardKind::Point | StandardKind::RiemannSurface);
    if needs_dim && param == 0 {
        return Err(Error::InvalidDimension(param));
    }
    Ok(match kind {
        StandardKind::Point => StandardTable::Diamond(cpn(0)),
        StandardKind::Cpn => StandardTable::Diamond(cpn(param)),
        StandardKind::RiemannSurface => StandardTable::Diamond(riemann_surface(param as u64)),
        StandardKind::HopfHodge => StandardTable::Diamond(hopf_hodge(param)),
        StandardKind::HopfBetti => StandardTable::Betti(hopf_betti(param)),
        StandardKind::HopfBc => StandardTable::Hermitian(hopf_bc(param)),
        StandardKind::CpnBetti => StandardTable::Betti(cpn_betti(param)),
    })
}

/// Diamond of `CP^n`: ones on the diagonal. `cpn(0)` is a point.
pub fn cpn(n: usize) -> HodgeDiamond {
    HodgeDiamond::from_fn(n, true, |p, q| u64::from(p == q)).expect("diagonal is symmetric")
}

pub fn cpn_betti(n: usize) -> BettiVector {
    let b = (0..=2 * n).map(|k| u64::from(k % 2 == 0)).collect();
    BettiVector::new(n, true, b).expect("symmetric")
}

pub fn riemann_surface(genus: u64) -> HodgeDiamond {
    HodgeDiamond::from_entries(1, true, [(0, 0, 1), (1, 0, genus), (0, 1, genus), (1, 1, 1)])
        .expect("symmetric")
}

pub fn riemann_surface_betti(genus: u64) -> BettiVector {
    BettiVector::new(1, true, vec![1, 2 * genus, 1]).expect("symmetric")
}

/// Corner set `{(0,0), (0,1), (n,n−1), (n,n)}` carrying the Hodge numbers of a
/// primary Hopf manifold.
pub fn hopf_corners(n: usize) -> [(usize, usize); 4] {
    [(0, 0), (0, 1), (n, n - 1), (n, n)]
}

pub fn hopf_hodge(n: usize) -> HodgeDiamond {
    assert!(n >= 1, "Hopf manifolds have dimension >= 1");
    HodgeDiamond::from_fn(n, true, |p, q| u64::from(hopf_corners(n).contains(&(p, q))))
        .expect("corner set is symmetric")
}

pub fn hopf_betti(n: usize) -> BettiVector {
    assert!(n >= 1, "Hopf manifolds have dimension >= 1");
    let top = 2 * n;
    let b = (0..=top)
        .map(|k| u64::from(k <= 1 || k + 1 >= top))
        .collect();
    BettiVector::new(n, true, b).expect("symmetric")
}

/// Bott–Chern numbers of a primary Hopf manifold: 1 on
/// `{(0,0), (1,1), (n−1,n), (n,n−1), (n,n)}`.
pub fn hopf_bc(n: usize) -> PartialHermitianTable {
    assert!(n >= 1, "Hopf manifolds have dimension >= 1");
    let ones = [(0, 0), (1, 1), (n - 1, n), (n, n - 1), (n, n)];
    let mut t = PartialHermitianTable::unknown(n, HermitianKind::BottChern);
    for p in 0..=n {
        for q in 0..=n {
            t.set(p, q, HermitianEntry::Known(u64::from(ones.contains(&(p, q)))));
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub k: usize,
    pub hodge_sum: u64,
    pub betti: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub degrees: Vec<DegreeComparison>,
    pub pass: bool,
}

impl DecompositionReport {
    pub fn failing_degrees(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| !d.pass).map(|d| d.k).collect()
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "b_k = Σ h^(p,q) for all {} degrees", self.degrees.len())
        } else {
            let bad: Vec<String> = self
                .degrees
                .iter()
                .filter(|d| !d.pass)
                .map(|d| format!("k={}: {} != {}", d.k, d.hodge_sum, d.betti))
                .collect();
            write!(f, "mismatch at {}", bad.join(", "))
        }
    }
}

/// Compares `Σ_{p+q=k} h^{p,q}` with `b_k` degree by degree.
pub fn check_decomposition(d: &HodgeDiamond, b: &BettiVector) -> Result<DecompositionReport> {
    if d.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            got: b.n(),
        });
    }
    let degrees: Vec<_> = d
        .hodge_sums()
        .into_iter()
        .enumerate()
        .map(|(k, hodge_sum)| {
            let betti = b.get(k as isize);
            DegreeComparison {
                k,
                hodge_sum,
                betti,
                pass: hodge_sum == betti,
            }
        })
        .collect();
    let pass = degrees.iter().all(|c| c.pass);
    Ok(DecompositionReport { degrees, pass })
}

/// Fixed-width diamond layout, one line per total degree `k = p + q`, entries
/// of a line ordered by decreasing `p`. Every line is newline-terminated.
pub fn render_diamond(d: &HodgeDiamond) -> String {
    let n = d.n();
    let width = d
        .h
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let blank = " ".repeat(width);
    let mut out = String::new();
    for k in 0..=2 * n {
        let mut slots = vec![blank.clone(); 2 * n + 1];
        let (lo, hi) = (k.saturating_sub(n), k.min(n));
        for p in (lo..=hi).rev() {
            let q = k - p;
            slots[n + q - p] = format!("{:>width$}", d.entry(p, q));
        }
        out.push_str(slots.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// Inverse of [`render_diamond`].
pub fn parse_diamond(text: &str, compact: bool) -> Result<HodgeDiamond> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len().is_multiple_of(2) {
        return Err(Error::Parse(format!("expected an odd number of rows, got {}", rows.len())));
    }
    let n = (rows.len() - 1) / 2;
    let mut entries = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let values = row
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("row {k}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let (lo, hi) = (k.saturating_sub(n), k.min(n));
        if values.len() != hi - lo + 1 {
            return Err(Error::Parse(format!(
                "row {k}: expected {} entries, got {}",
                hi - lo + 1,
                values.len()
            )));
        }
        for (i, v) in values.into_iter().enumerate() {
            let p = hi - i;
            entries.push((p, k - p, v));
        }
    }
    HodgeDiamond::from_entries(n, compact, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(n: usize, p: usize, q: usize) -> HodgeDiamond {
        HodgeDiamond::from_entries(n, false, [(p, q, 1)]).unwrap()
    }

    #[test]
    fn hopf_hodge_corners() {
        let d = hopf_hodge(3);
        for p in 0..=3 {
            for q in 0..=3 {
                let expect = [(0, 0), (0, 1), (3, 2), (3, 3)].contains(&(p, q));
                assert_eq!(d.entry(p, q), u64::from(expect), "({p},{q})");
            }
        }
    }

    #[test]
    fn hopf_bc_ones() {
        let t = hopf_bc(3);
        let ones = [(0, 0), (1, 1), (2, 3), (3, 2), (3, 3)];
        for p in 0..=3 {
            for q in 0..=3 {
                let v = u64::from(ones.contains(&(p, q)));
                assert_eq!(t.get(p, q), HermitianEntry::Known(v));
            }
        }
    }

    #[test]
    fn small_reference_tables() {
        let d = cpn(2);
        assert_eq!(d.nonzero_entries().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
        let e = riemann_surface(1);
        for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(e.entry(p, q), 1);
        }
        assert_eq!(hopf_betti(3).as_slice(), &[1, 1, 0, 0, 0, 1, 1]);
        assert_eq!(cpn_betti(2).as_slice(), &[1, 0, 1, 0, 1]);
    }

    #[test]
    fn standard_table_errors() {
        assert!(matches!(
            standard_table(StandardKind::Cpn, 0),
            Err(Error::InvalidDimension(0))
        ));
        assert!(matches!("torus".parse::<StandardKind>(), Err(Error::UnknownKind(_))));
        assert!(standard_table(StandardKind::RiemannSurface, 0).is_ok());
        let Ok(StandardTable::Hermitian(t)) = standard_table("hopf_bc".parse().unwrap(), 3) else {
            panic!("hopf_bc must be a Hermitian table");
        };
        assert_eq!(t, hopf_bc(3));
    }

    #[test]
    fn compact_flag_enforces_serre() {
        assert!(matches!(
            HodgeDiamond::from_entries(3, true, [(0, 1, 1)]),
            Err(Error::SerreAsymmetry { .. })
        ));
        assert!(HodgeDiamond::from_entries(3, false, [(0, 1, 1)]).is_ok());
        assert!(matches!(
            HodgeDiamond::from_entries(2, false, [(3, 0, 1)]),
            Err(Error::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn out_of_range_reads_zero() {
        let d = cpn(2);
        assert_eq!(d.get(-1, 0), 0);
        assert_eq!(d.get(3, 3), 0);
        assert_eq!(cpn_betti(2).get(-2), 0);
    }

    #[test]
    fn serre_dual_examples() {
        assert_eq!(hopf_hodge(3).serre_dual(), hopf_hodge(3));
        assert_eq!(single(3, 0, 1).serre_dual(), single(3, 3, 2));
        assert_eq!(cpn(4).serre_dual(), cpn(4));
    }

    #[test]
    fn hodge_sums_examples() {
        assert_eq!(hopf_hodge(3).hodge_sums(), vec![1, 1, 0, 0, 0, 1, 1]);
        assert_eq!(cpn(2).hodge_sums(), vec![1, 0, 1, 0, 1]);
        assert_eq!(HodgeDiamond::zeros(2, true).hodge_sums(), vec![0; 5]);
    }

    #[test]
    fn decomposition_examples() {
        assert!(check_decomposition(&hopf_hodge(3), &hopf_betti(3)).unwrap().pass);
        assert!(check_decomposition(&cpn(3), &cpn_betti(3)).unwrap().pass);
        let r = check_decomposition(&hopf_hodge(3), &cpn_betti(3)).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failing_degrees()[0], 1);
        assert!(matches!(
            check_decomposition(&cpn(3), &cpn_betti(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_diamond(&cpn(1)), "  1\n0   0\n  1\n");
        let rows: Vec<Vec<String>> = render_diamond(&hopf_hodge(2))
            .lines()
            .map(|l| l.split_whitespace().map(String::from).collect())
            .collect();
        let expect = [vec!["1"], vec!["0", "1"], vec!["0", "0", "0"], vec!["1", "0"], vec!["1"]];
        assert_eq!(rows, expect);
    }

    #[test]
    fn render_pads_wide_entries() {
        let d = HodgeDiamond::from_entries(1, true, [(0, 0, 1), (1, 1, 1), (0, 1, 12), (1, 0, 12)])
            .unwrap();
        assert_eq!(render_diamond(&d), "    1\n12    12\n    1\n");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_diamond("1\n0 0\n", false).is_err());
        assert!(parse_diamond("1\n0 x\n1\n", false).is_err());
        assert!(parse_diamond("1\n0 0 0\n1\n", false).is_err());
    }

    #[test]
    fn json_schema() {
        let json = serde_json::to_string(&hopf_hodge(2)).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"compact":true,"entries":[[0,0,1],[0,1,1],[2,1,1],[2,2,1]]}"#
        );
        let back: HodgeDiamond = serde_json::from_str(&json).unwrap();
        assert_eq!(back, hopf_hodge(2));
        let bad = r#"{"n":2,"compact":true,"entries":[[0,1,1]]}"#;
        assert!(serde_json::from_str::<HodgeDiamond>(bad).is_err());
    }

    #[test]
    fn hermitian_json_states() {
        let mut t = PartialHermitianTable::unknown(1, HermitianKind::BottChern);
        t.set(0, 0, HermitianEntry::Known(1));
        t.set(1, 1, HermitianEntry::EqualsHopfHat);
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["entries"][0]["state"], "known");
        assert_eq!(json["entries"][0]["value"], 1);
        assert_eq!(json["entries"][3]["state"], "equals_hopf_hat");
        assert!(json["entries"][1].get("value").is_none());
        let back: PartialHermitianTable = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn hermitian_dual_is_involutive() {
        let bc = hopf_bc(4);
        let a = bc.index_dual();
        assert_eq!(a.kind(), HermitianKind::Aeppli);
        assert_eq!(a.index_dual(), bc);
        check_hermitian_duality(&bc, &a).unwrap();
        assert!(check_hermitian_duality(&bc, &bc).is_err());
    }

    fn arb_diamond() -> impl Strategy<Value = HodgeDiamond> {
        (0usize..5).prop_flat_map(|n| {
            proptest::collection::vec(0u64..20, (n + 1) * (n + 1)).prop_map(move |h| {
                HodgeDiamond::from_fn(n, false, |p, q| h[p * (n + 1) + q]).unwrap()
            })
        })
    }

    fn arb_symmetric_pair() -> impl Strategy<Value = (HodgeDiamond, BettiVector)> {
        (1usize..5).prop_flat_map(|n| {
            (
                proptest::collection::vec(0u64..5, (n + 1) * (n + 1)),
                proptest::collection::vec(0u64..10, 2 * n + 1),
            )
                .prop_map(move |(h, b)| {
                    let d = HodgeDiamond::from_fn(n, false, |p, q| {
                        let (a, c) = (p * (n + 1) + q, (n - p) * (n + 1) + (n - q));
                        h[a.min(c)]
                    })
                    .unwrap()
                    .with_compact(true)
                    .unwrap();
                    let top = 2 * n;
                    let b = (0..=top).map(|k| b[k.min(top - k)]).collect();
                    (d, BettiVector::new(n, true, b).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn serre_dual_involutive(d in arb_diamond()) {
            prop_assert_eq!(d.serre_dual().serre_dual(), d);
        }

        #[test]
        fn sums_of_dual_are_reversed(d in arb_diamond()) {
            let mut s = d.hodge_sums();
            s.reverse();
            prop_assert_eq!(d.serre_dual().hodge_sums(), s);
        }

        #[test]
        fn render_parse_round_trip(d in arb_diamond()) {
            let back = parse_diamond(&render_diamond(&d), false).unwrap();
            prop_assert_eq!(back, d);
        }

        #[test]
        fn decomposition_symmetric_under_duality((d, b) in arb_symmetric_pair()) {
            let direct = check_decomposition(&d, &b).unwrap();
            let dual = check_decomposition(&d.serre_dual(), &b.poincare_dual()).unwrap();
            prop_assert_eq!(direct.pass, dual.pass);
        }

        #[test]
        fn decomposition_of_own_sums_passes(d in arb_diamond()) {
            let b = BettiVector::new(d.n(), false, d.hodge_sums()).unwrap();
            prop_assert!(check_decomposition(&d, &b).unwrap().pass);
        }
    }
}
