//! Blow-up / blow-down accounting.
//!
//! Blowing up a compact complex `n`-fold `X` along a submanifold `Z` of
//! codimension `r >= 2` adds
//!
//! ```text
//! h^{p,q} += Σ_{i=1}^{r−1} h^{p−i,q−i}(Z)        b_k += Σ_{i=1}^{r−1} b_{k−2i}(Z)
//! ```
//!
//! and blowing down subtracts the same sums. Whether a sequence of centers is
//! geometrically realizable is not checked; only the numbers are tracked.

use serde::{Deserialize, Serialize};

use crate::diamond::{
    cpn, cpn_betti, riemann_surface, riemann_surface_betti, BettiVector, HodgeDiamond,
};
use crate::error::{Error, Result};
use crate::report::Check;

/// A blow-up center, described by its cohomology tables only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Center {
    name: String,
    diamond: HodgeDiamond,
    betti: BettiVector,
}

impl Center {
    pub fn new(name: impl Into<String>, diamond: HodgeDiamond, betti: BettiVector) -> Result<Self> {
        if diamond.n() != betti.n() {
            return Err(Error::DimensionMismatch {
                expected: diamond.n(),
                got: betti.n(),
            });
        }
        diamond.check_serre()?;
        Ok(Self {
            name: name.into(),
            diamond: diamond.with_compact(true)?,
            betti,
        })
    }

    pub fn point() -> Self {
        Self::builtin("point").expect("builtin")
    }

    pub fn projective(k: usize) -> Self {
        Self::builtin(&format!("cp{k}")).expect("builtin")
    }

    pub fn curve(genus: u64) -> Self {
        Self::builtin(&format!("genus{genus}")).expect("builtin")
    }

    pub fn elliptic() -> Self {
        Self::builtin("elliptic").expect("builtin")
    }

    /// Built-in centers: `point`, `elliptic`, `cp<k>` (projective `k`-space)
    /// and `genus<g>` (compact Riemann surface of genus `g`).
    pub fn builtin(name: &str) -> Result<Self> {
        let (diamond, betti) = if name == "point" {
            (cpn(0), cpn_betti(0))
        } else if name == "elliptic" {
            (riemann_surface(1), riemann_surface_betti(1))
        } else if let Some(k) = name.strip_prefix("cp").and_then(|s| s.parse::<usize>().ok()) {
            (cpn(k), cpn_betti(k))
        } else if let Some(g) = name.strip_prefix("genus").and_then(|s| s.parse::<u64>().ok()) {
            (riemann_surface(g), riemann_surface_betti(g))
        } else {
            return Err(Error::UnknownKind(format!("center {name:?}")));
        };
        Ok(Self {
            name: name.to_string(),
            diamond,
            betti,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.diamond.n()
    }

    pub fn diamond(&self) -> &HodgeDiamond {
        &self.diamond
    }

    pub fn betti(&self) -> &BettiVector {
        &self.betti
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0 && self.diamond.entry(0, 0) == 1 && self.betti.get(0) == 1
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CenterJson {
    Builtin(String),
    Tables {
        #[serde(default)]
        name: Option<String>,
        diamond: HodgeDiamond,
        betti: BettiVector,
    },
}

impl Serialize for Center {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match Center::builtin(&self.name) {
            Ok(b) if b == *self => CenterJson::Builtin(self.name.clone()),
            _ => CenterJson::Tables {
                name: Some(self.name.clone()),
                diamond: self.diamond.clone(),
                betti: self.betti.clone(),
            },
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Center {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match CenterJson::deserialize(d)? {
            CenterJson::Builtin(name) => Center::builtin(&name),
            CenterJson::Tables {
                name,
                diamond,
                betti,
            } => Center::new(name.unwrap_or_else(|| "custom".into()), diamond, betti),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModificationStep {
    pub direction: Direction,
    pub codim: usize,
    pub center: Center,
}

impl ModificationStep {
    pub fn up(center: Center, codim: usize) -> Self {
        Self {
            direction: Direction::Up,
            codim,
            center,
        }
    }

    pub fn down(center: Center, codim: usize) -> Self {
        Self {
            direction: Direction::Down,
            codim,
            center,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson")]
pub struct ModificationSequence {
    ambient_n: usize,
    steps: Vec<ModificationStep>,
}

#[derive(Deserialize)]
struct SequenceJson {
    ambient_n: usize,
    steps: Vec<ModificationStep>,
}

impl TryFrom<SequenceJson> for ModificationSequence {
    type Error = Error;

    fn try_from(json: SequenceJson) -> Result<Self> {
        ModificationSequence::new(json.ambient_n, json.steps)
    }
}

impl ModificationSequence {
    /// Every step must satisfy `codim >= 2` and `dim(center) + codim = ambient_n`.
    pub fn new(ambient_n: usize, steps: Vec<ModificationStep>) -> Result<Self> {
        for step in &steps {
            check_step(ambient_n, &step.center, step.codim)?;
        }
        Ok(Self { ambient_n, steps })
    }

    /// `r` successive blow-ups at points.
    pub fn point_blowups(ambient_n: usize, r: usize) -> Self {
        let steps = (0..r)
            .map(|_| ModificationStep::up(Center::point(), ambient_n))
            .collect();
        Self::new(ambient_n, steps).expect("point blow-ups are consistent for n >= 2")
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn steps(&self) -> &[ModificationStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn check_step(n: usize, z: &Center, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::CodimensionTooSmall(r));
    }
    if z.dim() + r != n {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(r),
            got: z.dim(),
        });
    }
    Ok(())
}

/// Contribution `Σ_{i=1}^{r−1} h^{p−i,q−i}(Z)` of a center to bidegree `(p,q)`.
fn hodge_shift(z: &HodgeDiamond, r: usize, p: usize, q: usize) -> u64 {
    (1..r)
        .map(|i| z.get(p as isize - i as isize, q as isize - i as isize))
        .sum()
}

/// Contribution `Σ_{i=1}^{r−1} b_{k−2i}(Z)` of a center to degree `k`.
fn betti_shift(z: &BettiVector, r: usize, k: usize) -> u64 {
    (1..r).map(|i| z.get(k as isize - 2 * i as isize)).sum()
}

pub fn blowup_hodge(x: &HodgeDiamond, z: &Center, r: usize) -> Result<HodgeDiamond> {
    check_step(x.n(), z, r)?;
    HodgeDiamond::from_fn(x.n(), x.is_compact(), |p, q| {
        x.entry(p, q) + hodge_shift(z.diamond(), r, p, q)
    })
}

pub fn blowup_betti(x: &BettiVector, z: &Center, r: usize) -> Result<BettiVector> {
    check_step(x.n(), z, r)?;
    let b = (0..=2 * x.n())
        .map(|k| x.get(k as isize) + betti_shift(z.betti(), r, k))
        .collect();
    BettiVector::new(x.n(), x.is_compact(), b)
}

/// Exact inverse of [`blowup_hodge`]; fails if any entry would go negative.
pub fn blowdown_hodge(x: &HodgeDiamond, z: &Center, r: usize) -> Result<HodgeDiamond> {
    check_step(x.n(), z, r)?;
    let n = x.n();
    let mut entries = Vec::with_capacity((n + 1) * (n + 1));
    for p in 0..=n {
        for q in 0..=n {
            let (have, remove) = (x.entry(p, q), hodge_shift(z.diamond(), r, p, q));
            let v = have.checked_sub(remove).ok_or_else(|| {
                Error::Infeasible(format!(
                    "blow-down along {} (codim {r}) needs h^({p},{q}) >= {remove}, have {have}",
                    z.name()
                ))
            })?;
            entries.push((p, q, v));
        }
    }
    HodgeDiamond::from_entries(n, x.is_compact(), entries)
}

pub fn blowdown_betti(x: &BettiVector, z: &Center, r: usize) -> Result<BettiVector> {
    check_step(x.n(), z, r)?;
    let b = (0..=2 * x.n())
        .map(|k| {
            let (have, remove) = (x.get(k as isize), betti_shift(z.betti(), r, k));
            have.checked_sub(remove).ok_or_else(|| {
                Error::Infeasible(format!(
                    "blow-down along {} (codim {r}) needs b_{k} >= {remove}, have {have}",
                    z.name()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BettiVector::new(x.n(), x.is_compact(), b)
}

/// Folds the steps of `seq` over both tables, left to right.
pub fn evaluate_sequence(
    base_hodge: &HodgeDiamond,
    base_betti: &BettiVector,
    seq: &ModificationSequence,
) -> Result<(HodgeDiamond, BettiVector)> {
    for n in [base_hodge.n(), base_betti.n()] {
        if n != seq.ambient_n() {
            return Err(Error::DimensionMismatch {
                expected: seq.ambient_n(),
                got: n,
            });
        }
    }
    let mut hodge = base_hodge.clone();
    let mut betti = base_betti.clone();
    for (i, step) in seq.steps().iter().enumerate() {
        let res = match step.direction {
            Direction::Up => blowup_hodge(&hodge, &step.center, step.codim)
                .and_then(|h| Ok((h, blowup_betti(&betti, &step.center, step.codim)?))),
            Direction::Down => blowdown_hodge(&hodge, &step.center, step.codim)
                .and_then(|h| Ok((h, blowdown_betti(&betti, &step.center, step.codim)?))),
        };
        (hodge, betti) = res.map_err(|e| match e {
            Error::Infeasible(msg) => Error::Infeasible(format!("step {i}: {msg}")),
            other => other,
        })?;
    }
    Ok((hodge, betti))
}

/// Row `q = 0` and column `p = 0` are bimeromorphic invariants; compares them.
pub fn bimeromorphic_invariants_check(before: &HodgeDiamond, after: &HodgeDiamond) -> Result<Check> {
    if before.n() != after.n() {
        return Err(Error::DimensionMismatch {
            expected: before.n(),
            got: after.n(),
        });
    }
    let n = before.n();
    let mut bad = Vec::new();
    for k in 0..=n {
        for (p, q) in [(k, 0), (0, k)] {
            if before.entry(p, q) != after.entry(p, q) && !bad.contains(&(p, q)) {
                bad.push((p, q));
            }
        }
    }
    bad.sort_unstable();
    Ok(if bad.is_empty() {
        Check::pass("bimeromorphic_invariants", "h^(p,0) and h^(0,q) agree")
    } else {
        let list: Vec<String> = bad.iter().map(|(p, q)| format!("({p},{q})")).collect();
        Check::fail("bimeromorphic_invariants", format!("differ at {}", list.join(", ")))
    })
}
