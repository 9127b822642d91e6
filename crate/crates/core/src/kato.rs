//! Hodge, Betti, Bott–Chern and Aeppli numbers of a Kato manifold `X(π, σ)`
//! from the modification `π` alone.
//!
//! `π` is given as a blow-up/blow-down sequence starting with a blow-up at the
//! origin. The embedding `σ` has no numeric content for these tables and is
//! not represented; the standing assumption `σ(0) ∈ E` is taken for granted.
//!
//! Two routes compute the Dolbeault numbers:
//! - *via the modified ball*: `h^{p,q}(B̂) = ĥ^{p,q}(ĈPⁿ) − h^{p,q}(CPⁿ)` for
//!   `q >= 1`, then the corner/Serre relations of [`kato_from_bhat`];
//! - *direct*: the corner set `{(0,0),(0,1),(n,n−1),(n,n)}` carries 1, every
//!   other entry is `ĥ^{p,q}(ĈPⁿ) − h^{p,q}(CPⁿ)`.
//!
//! [`kato_numbers`] computes both and records their agreement as a check.

use serde::Serialize;

use crate::diamond::{
    check_decomposition, check_hermitian_duality, cpn, cpn_betti, hopf_betti, hopf_bc,
    hopf_corners, hopf_hodge, BettiVector, DolbeaultEntry, HermitianEntry, HermitianKind,
    HodgeDiamond, PartialDolbeaultTable, PartialHermitianTable,
};
use crate::error::{Error, Result};
use crate::modifications::{evaluate_sequence, Direction, ModificationSequence};
use crate::report::Check;

/// Modification data of a Kato manifold of dimension `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatoInput {
    seq: ModificationSequence,
}

impl KatoInput {
    pub fn new(seq: ModificationSequence) -> Result<Self> {
        let n = seq.ambient_n();
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        let first = seq
            .steps()
            .first()
            .ok_or_else(|| Error::InvalidInput("a Kato modification needs at least one step".into()))?;
        if first.direction != Direction::Up || !first.center.is_point() {
            return Err(Error::InvalidInput(
                "the first step must be a blow-up at a point (the origin)".into(),
            ));
        }
        Ok(Self { seq })
    }

    /// `r` successive point blow-ups.
    pub fn point_blowups(n: usize, r: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        Self::new(ModificationSequence::point_blowups(n, r))
    }

    pub fn n(&self) -> usize {
        self.seq.ambient_n()
    }

    pub fn sequence(&self) -> &ModificationSequence {
        &self.seq
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KatoReport {
    pub hodge: HodgeDiamond,
    pub betti: BettiVector,
    pub bc: PartialHermitianTable,
    pub aeppli: PartialHermitianTable,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl KatoReport {
    pub fn all_pass(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tables of the induced modification `ĈPⁿ → CPⁿ`.
pub fn cpn_hat_numbers(input: &KatoInput) -> Result<(HodgeDiamond, BettiVector)> {
    let n = input.n();
    evaluate_sequence(&cpn(n), &cpn_betti(n), input.sequence())
}

fn difference(hat: u64, base: u64, what: &str) -> Result<u64> {
    hat.checked_sub(base).ok_or_else(|| {
        Error::Infeasible(format!("{what}: modified value {hat} below projective value {base}"))
    })
}

/// Dolbeault numbers of the modified ball: `Defined(ĥ − h)` for `q >= 1`,
/// `Undefined` on the row `q = 0`.
pub fn bhat_partial(input: &KatoInput) -> Result<PartialDolbeaultTable> {
    let n = input.n();
    let (hat, _) = cpn_hat_numbers(input)?;
    let base = cpn(n);
    let mut t = PartialDolbeaultTable::undefined(n);
    for p in 0..=n {
        for q in 1..=n {
            let v = difference(hat.entry(p, q), base.entry(p, q), &format!("h^({p},{q})"))?;
            t.set(p, q, DolbeaultEntry::Defined(v));
        }
    }
    Ok(t)
}

/// Hodge numbers of `X` from those of the modified ball.
///
/// Needs the ball's numbers on `1 <= q <= n−2`. Rows `0, 1` are fixed by the
/// corner relations, rows `n−1, n` by Serre duality from rows `1, 0`.
pub fn kato_from_bhat(ball: &PartialDolbeaultTable) -> Result<HodgeDiamond> {
    let n = ball.n();
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let mut h = vec![vec![0u64; n + 1]; n + 1];
    for (p, row) in h.iter_mut().enumerate() {
        row[0] = u64::from(p == 0);
        row[1] = ball.defined(p, 1)? + u64::from(p == 0);
        for (q, cell) in row.iter_mut().enumerate().take(n - 1).skip(2) {
            *cell = ball.defined(p, q)?;
        }
    }
    for p in 0..=n {
        h[p][n - 1] = h[n - p][1];
        h[p][n] = h[n - p][0];
    }
    HodgeDiamond::from_fn(n, true, |p, q| h[p][q])
}

fn direct_route(n: usize, hat: &HodgeDiamond, hat_betti: &BettiVector) -> Result<(HodgeDiamond, BettiVector)> {
    let base = cpn(n);
    let corners = hopf_corners(n);
    let mut entries = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let v = if corners.contains(&(p, q)) {
                1
            } else {
                difference(hat.entry(p, q), base.entry(p, q), &format!("h^({p},{q})"))?
            };
            entries.push((p, q, v));
        }
    }
    let base_b = cpn_betti(n);
    let top = 2 * n;
    let b = (0..=top)
        .map(|k| {
            if k <= 1 || k + 1 >= top {
                Ok(1)
            } else {
                difference(hat_betti.get(k as isize), base_b.get(k as isize), &format!("b_{k}"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        HodgeDiamond::from_entries(n, true, entries)?,
        BettiVector::new(n, true, b)?,
    ))
}

/// Tables of `Ĥ`, the same modification applied to a primary Hopf manifold:
/// `h(Ĥ) = h(H) + ĥ(ĈPⁿ) − h(CPⁿ)`, likewise for Betti numbers. Accepts any
/// sequence, including the empty one.
pub fn hopf_modification_numbers(seq: &ModificationSequence) -> Result<(HodgeDiamond, BettiVector)> {
    let n = seq.ambient_n();
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let (hat, hat_b) = evaluate_sequence(&cpn(n), &cpn_betti(n), seq)?;
    let (base, base_b) = (cpn(n), cpn_betti(n));
    let (hopf, hopf_b) = (hopf_hodge(n), hopf_betti(n));
    let mut entries = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let v = (hopf.entry(p, q) + hat.entry(p, q))
                .checked_sub(base.entry(p, q))
                .ok_or_else(|| Error::Infeasible(format!("h^({p},{q}) of the modified Hopf manifold")))?;
            entries.push((p, q, v));
        }
    }
    let b = (0..=2 * n as isize)
        .map(|k| {
            (hopf_b.get(k) + hat_b.get(k))
                .checked_sub(base_b.get(k))
                .ok_or_else(|| Error::Infeasible(format!("b_{k} of the modified Hopf manifold")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        HodgeDiamond::from_entries(n, true, entries)?,
        BettiVector::new(n, true, b)?,
    ))
}

pub fn hopf_hat_numbers(input: &KatoInput) -> Result<(HodgeDiamond, BettiVector)> {
    hopf_modification_numbers(input.sequence())
}

/// Closed form for `r` point blow-ups: corners 1, `r` on the open diagonal;
/// `b_k = 1` for `k ∈ {0,1,2n−1,2n}`, `r` in even middle degrees.
pub fn blowup_points_kato(n: usize, r: usize) -> Result<(HodgeDiamond, BettiVector)> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if r == 0 {
        return Err(Error::InvalidInput("at least one blow-up is required".into()));
    }
    let corners = hopf_corners(n);
    let r = r as u64;
    let h = HodgeDiamond::from_fn(n, true, |p, q| {
        if corners.contains(&(p, q)) {
            1
        } else if p == q && (1..n).contains(&p) {
            r
        } else {
            0
        }
    })?;
    let top = 2 * n;
    let b = (0..=top)
        .map(|k| {
            if k <= 1 || k + 1 >= top {
                1
            } else if k % 2 == 0 {
                r
            } else {
                0
            }
        })
        .collect();
    Ok((h, BettiVector::new(n, true, b)?))
}

/// Bott–Chern table of `X` from its Dolbeault numbers.
///
/// - `p, q >= 2`, `p + q <= n−1`: Known, equal to `h^{p,q}_∂̄(X)`;
/// - row `q = 0`: Known, 1 at `(0,0)` and 0 elsewhere;
/// - `p = n`: Known, 1 for `q ∈ {n−1, n}` and 0 otherwise;
/// - remaining entries of the column `p = 0` and the row `q = n`:
///   `EqualsHopfHat`;
/// - everything else, `(1,1)` included: Unknown.
pub fn bott_chern_from_hodge(hodge: &HodgeDiamond) -> PartialHermitianTable {
    let n = hodge.n();
    let mut t = PartialHermitianTable::unknown(n, HermitianKind::BottChern);
    for p in 0..=n {
        for q in 0..=n {
            let e = if q == 0 {
                HermitianEntry::Known(u64::from(p == 0))
            } else if p == n {
                HermitianEntry::Known(u64::from(q + 1 >= n))
            } else if p == 0 || q == n {
                HermitianEntry::EqualsHopfHat
            } else if p >= 2 && q >= 2 && p + q < n {
                HermitianEntry::Known(hodge.entry(p, q))
            } else {
                HermitianEntry::Unknown
            };
            t.set(p, q, e);
        }
    }
    t
}

pub fn bott_chern_table(input: &KatoInput) -> Result<PartialHermitianTable> {
    let (hodge, _) = direct_numbers(input)?;
    Ok(bott_chern_from_hodge(&hodge))
}

/// Regions where the Aeppli numbers of `X` equal its Dolbeault numbers:
/// `p, q <= n−2` with `p + q >= n+1`, or `p = 0`, or `q = n`.
pub fn aeppli_matches_dolbeault_region(n: usize, p: usize, q: usize) -> bool {
    (p + 2 <= n && q + 2 <= n && p + q > n) || p == 0 || q == n
}

/// Aeppli table as the index dual of a Bott–Chern table, cross-checked
/// against the Dolbeault numbers wherever both are determined.
pub fn aeppli_table(bc: &PartialHermitianTable, hodge: &HodgeDiamond) -> Result<PartialHermitianTable> {
    if bc.kind() != HermitianKind::BottChern {
        return Err(Error::Duality("input table is not a Bott–Chern table".into()));
    }
    if bc.n() != hodge.n() {
        return Err(Error::DimensionMismatch {
            expected: bc.n(),
            got: hodge.n(),
        });
    }
    let aeppli = bc.index_dual();
    check_hermitian_duality(bc, &aeppli)?;
    let n = bc.n();
    for (p, q, v) in aeppli.known_entries() {
        if aeppli_matches_dolbeault_region(n, p, q) && v != hodge.entry(p, q) {
            return Err(Error::Duality(format!(
                "A({p},{q}) = {v} but h^({p},{q}) = {}",
                hodge.entry(p, q)
            )));
        }
    }
    Ok(aeppli)
}

fn direct_numbers(input: &KatoInput) -> Result<(HodgeDiamond, BettiVector)> {
    let (hat, hat_b) = cpn_hat_numbers(input)?;
    direct_route(input.n(), &hat, &hat_b)
}

fn bc_corner_check(bc: &PartialHermitianTable) -> Check {
    let n = bc.n();
    let hopf = hopf_bc(n);
    let mut spots: Vec<(usize, usize)> = (0..=n).map(|p| (p, 0)).collect();
    spots.extend([(n, n - 1), (n, n)]);
    let bad: Vec<String> = spots
        .into_iter()
        .filter(|&(p, q)| bc.get(p, q) != hopf.get(p, q))
        .map(|(p, q)| format!("({p},{q})"))
        .collect();
    if bad.is_empty() {
        Check::pass("bc_corners_match_hopf", "row q=0, (n,n-1), (n,n) agree with the Hopf table")
    } else {
        Check::fail("bc_corners_match_hopf", format!("differ at {}", bad.join(", ")))
    }
}

/// Full report: Dolbeault numbers by both routes, Betti numbers, comparison
/// with the modified Hopf manifold, Bott–Chern and Aeppli tables.
///
/// Disagreements are recorded as failed checks; only an infeasible
/// sequence is an error.
pub fn kato_numbers(input: &KatoInput) -> Result<KatoReport> {
    let n = input.n();
    let (hodge, betti) = direct_numbers(input)?;
    let mut checks = Vec::new();

    let via_ball = kato_from_bhat(&bhat_partial(input)?)?;
    checks.push(if via_ball == hodge {
        Check::pass("routes_agree", "modified-ball route equals direct route")
    } else {
        let diff: Vec<String> = (0..=n)
            .flat_map(|p| (0..=n).map(move |q| (p, q)))
            .filter(|&(p, q)| via_ball.entry(p, q) != hodge.entry(p, q))
            .map(|(p, q)| format!("({p},{q}): {} vs {}", via_ball.entry(p, q), hodge.entry(p, q)))
            .collect();
        Check::fail("routes_agree", diff.join(", "))
    });

    let decomposition = check_decomposition(&hodge, &betti)?;
    checks.push(Check::new("hodge_decomposition", decomposition.pass, decomposition.to_string()));

    checks.push(match hodge.check_serre() {
        Ok(()) => Check::pass("serre_symmetry", "h^(p,q) = h^(n-p,n-q)"),
        Err(e) => Check::fail("serre_symmetry", e.to_string()),
    });
    checks.push(match betti.check_poincare() {
        Ok(()) => Check::pass("poincare_symmetry", "b_k = b_(2n-k)"),
        Err(e) => Check::fail("poincare_symmetry", e.to_string()),
    });

    let top = 2 * n as isize;
    let cover_ok = [0, 1, top - 1, top].iter().all(|&k| betti.get(k) == 1)
        && hodge.entry(0, 1) == 1
        && hodge.entry(n, n - 1) == 1;
    checks.push(Check::new(
        "z_cover_corners",
        cover_ok,
        format!(
            "b_0={} b_1={} b_(2n-1)={} b_2n={} h^(0,1)={} h^(n,n-1)={}",
            betti.get(0),
            betti.get(1),
            betti.get(top - 1),
            betti.get(top),
            hodge.entry(0, 1),
            hodge.entry(n, n - 1)
        ),
    ));

    let (hopf_h, hopf_b) = hopf_hat_numbers(input)?;
    checks.push(Check::new(
        "same_numbers_as_hopf_hat",
        hopf_h == hodge && hopf_b == betti,
        if hopf_h == hodge && hopf_b == betti {
            "Hodge and Betti numbers equal those of the modified Hopf manifold".to_string()
        } else {
            format!("hodge equal: {}, betti equal: {}", hopf_h == hodge, hopf_b == betti)
        },
    ));

    let bc = bott_chern_from_hodge(&hodge);
    checks.push(bc_corner_check(&bc));
    let aeppli = match aeppli_table(&bc, &hodge) {
        Ok(a) => {
            checks.push(Check::pass("bc_aeppli_duality", "Aeppli table is the index dual of the Bott–Chern table"));
            a
        }
        Err(e) => {
            checks.push(Check::fail("bc_aeppli_duality", e.to_string()));
            bc.index_dual()
        }
    };

    let mut notes = Vec::new();
    if n >= 3 {
        let h12 = hodge.entry(1, 2);
        notes.push(if h12 == 0 {
            "h^(1,2) = 0: this Kato manifold admits no pluriclosed metric".to_string()
        } else {
            format!("h^(1,2) = {h12}")
        });
    }

    Ok(KatoReport {
        hodge,
        betti,
        bc,
        aeppli,
        checks,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modifications::{Center, ModificationStep};
    use proptest::prelude::*;

    fn elliptic_input() -> KatoInput {
        KatoInput::new(
            ModificationSequence::new(
                4,
                vec![
                    ModificationStep::up(Center::point(), 4),
                    ModificationStep::up(Center::elliptic(), 3),
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn input_validation() {
        assert!(matches!(KatoInput::point_blowups(2, 1), Err(Error::InvalidDimension(2))));
        assert!(KatoInput::new(ModificationSequence::new(3, vec![]).unwrap()).is_err());
        let seq = ModificationSequence::new(3, vec![ModificationStep::up(Center::projective(1), 2)]).unwrap();
        assert!(KatoInput::new(seq).is_err());
        let seq = ModificationSequence::new(3, vec![ModificationStep::down(Center::point(), 3)]).unwrap();
        assert!(KatoInput::new(seq).is_err());
    }

    #[test]
    fn cpn_hat_examples() {
        let (h, b) = cpn_hat_numbers(&KatoInput::point_blowups(3, 1).unwrap()).unwrap();
        assert_eq!((0..=3).map(|p| h.entry(p, p)).collect::<Vec<_>>(), vec![1, 2, 2, 1]);
        assert_eq!(b.as_slice(), &[1, 0, 2, 0, 2, 0, 1]);
        let (h, _) = cpn_hat_numbers(&elliptic_input()).unwrap();
        assert_eq!(h.entry(1, 2), 1);
        let (h, _) = cpn_hat_numbers(&KatoInput::point_blowups(3, 2).unwrap()).unwrap();
        assert_eq!((0..=3).map(|p| h.entry(p, p)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn bhat_partial_one_point() {
        let t = bhat_partial(&KatoInput::point_blowups(3, 1).unwrap()).unwrap();
        for p in 0..=3 {
            assert_eq!(t.get(p, 0), DolbeaultEntry::Undefined);
            for q in 1..=3 {
                let expect = u64::from(p == q && (p == 1 || p == 2));
                assert_eq!(t.defined(p as usize, q as usize).unwrap(), expect);
            }
        }
    }

    #[test]
    fn kato_from_bhat_examples() {
        let one = kato_from_bhat(&bhat_partial(&KatoInput::point_blowups(3, 1).unwrap()).unwrap()).unwrap();
        let ones = [(0, 0), (0, 1), (3, 2), (3, 3), (1, 1), (2, 2)];
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(one.entry(p, q), u64::from(ones.contains(&(p, q))), "({p},{q})");
            }
        }

        let mut zero = PartialDolbeaultTable::undefined(3);
        for p in 0..=3 {
            for q in 1..=3 {
                zero.set(p, q, DolbeaultEntry::Defined(0));
            }
        }
        assert_eq!(kato_from_bhat(&zero).unwrap(), hopf_hodge(3));

        let h = kato_from_bhat(&bhat_partial(&elliptic_input()).unwrap()).unwrap();
        assert_eq!(h.entry(1, 2), 1);
        assert_eq!(h.entry(2, 1), 1);
    }

    #[test]
    fn kato_from_bhat_needs_middle_rows() {
        let t = PartialDolbeaultTable::undefined(4);
        assert!(matches!(kato_from_bhat(&t), Err(Error::MissingEntry { .. })));
        assert!(matches!(
            kato_from_bhat(&PartialDolbeaultTable::undefined(2)),
            Err(Error::InvalidDimension(2))
        ));
    }

    #[test]
    fn kato_numbers_examples() {
        let rep = kato_numbers(&KatoInput::point_blowups(3, 1).unwrap()).unwrap();
        assert_eq!(rep.betti.as_slice(), &[1, 1, 1, 0, 1, 1, 1]);
        assert!(rep.all_pass(), "{:?}", rep.checks);

        let rep = kato_numbers(&KatoInput::point_blowups(3, 2).unwrap()).unwrap();
        assert_eq!(rep.betti.get(2), 2);
        assert_eq!(rep.betti.get(4), 2);
        assert_eq!(rep.hodge.entry(1, 1), 2);
        assert_eq!(rep.hodge.entry(2, 2), 2);

        let rep = kato_numbers(&elliptic_input()).unwrap();
        assert_eq!(rep.betti.get(3), 2);
        assert_eq!(rep.hodge.entry(1, 2), 1);
        assert_eq!(rep.hodge.entry(2, 1), 1);
        assert_eq!(rep.hodge.entry(1, 1), 2);
        assert_eq!(rep.hodge.entry(2, 2), 3);
        assert!(rep.check("hodge_decomposition").unwrap().pass);
        assert!(rep.all_pass(), "{:?}", rep.checks);
        assert_eq!(rep.notes, vec!["h^(1,2) = 1".to_string()]);
    }

    #[test]
    fn hopf_hat_examples() {
        let input = KatoInput::point_blowups(3, 1).unwrap();
        let rep = kato_numbers(&input).unwrap();
        assert_eq!(hopf_hat_numbers(&input).unwrap(), (rep.hodge, rep.betti));
        let empty = ModificationSequence::new(3, vec![]).unwrap();
        assert_eq!(hopf_modification_numbers(&empty).unwrap(), (hopf_hodge(3), hopf_betti(3)));
        let rep = kato_numbers(&elliptic_input()).unwrap();
        assert_eq!(hopf_hat_numbers(&elliptic_input()).unwrap(), (rep.hodge, rep.betti));
    }

    #[test]
    fn closed_form_examples() {
        let (h, _) = blowup_points_kato(3, 2).unwrap();
        assert_eq!((h.entry(1, 1), h.entry(2, 2)), (2, 2));
        let (_, b) = blowup_points_kato(5, 1).unwrap();
        assert_eq!(b.as_slice(), &[1, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1]);
        assert!(blowup_points_kato(2, 1).is_err());
        assert!(blowup_points_kato(3, 0).is_err());
        for r in 1..4 {
            let rep = kato_numbers(&KatoInput::point_blowups(4, r).unwrap()).unwrap();
            assert_eq!(rep.hodge.entry(1, 2), 0);
            assert!(rep.notes[0].contains("no pluriclosed"));
        }
    }

    #[test]
    fn bott_chern_n3() {
        let bc = bott_chern_table(&KatoInput::point_blowups(3, 1).unwrap()).unwrap();
        assert_eq!(bc.get(0, 0), HermitianEntry::Known(1));
        for k in 1..=3 {
            assert_eq!(bc.get(k, 0), HermitianEntry::Known(0));
        }
        assert_eq!(bc.get(3, 1), HermitianEntry::Known(0));
        assert_eq!(bc.get(3, 2), HermitianEntry::Known(1));
        assert_eq!(bc.get(3, 3), HermitianEntry::Known(1));
        assert_eq!(bc.get(1, 1), HermitianEntry::Unknown);
        assert_eq!(bc.get(0, 2), HermitianEntry::EqualsHopfHat);
        assert_eq!(bc.get(2, 3), HermitianEntry::EqualsHopfHat);
        // no (p,q) with p,q >= 2 and p+q <= 2
        assert_eq!(bc.get(2, 2), HermitianEntry::Unknown);
    }

    #[test]
    fn bott_chern_n6_region() {
        for r in 1..4 {
            let bc = bott_chern_table(&KatoInput::point_blowups(6, r).unwrap()).unwrap();
            assert_eq!(bc.get(2, 2), HermitianEntry::Known(r as u64));
            assert_eq!(bc.get(2, 3), HermitianEntry::Known(0));
            assert_eq!(bc.get(3, 3), HermitianEntry::Unknown);
            assert_eq!(bc.get(6, 5), hopf_bc(6).get(6, 5));
        }
    }

    #[test]
    fn aeppli_examples() {
        let input = KatoInput::point_blowups(3, 1).unwrap();
        let rep = kato_numbers(&input).unwrap();
        let a = &rep.aeppli;
        assert_eq!(a.kind(), HermitianKind::Aeppli);
        assert_eq!(a.get(3, 3), HermitianEntry::Known(1));
        assert_eq!(a.get(0, 0), HermitianEntry::Known(1));
        for k in 1..=3 {
            assert_eq!(a.get(3 - k, 3), HermitianEntry::Known(0));
        }
        assert_eq!(a.index_dual(), rep.bc);

        let rep = kato_numbers(&KatoInput::point_blowups(6, 2).unwrap()).unwrap();
        assert_eq!(rep.aeppli.get(4, 4), rep.bc.get(2, 2));
        assert_eq!(rep.aeppli.get(4, 4), HermitianEntry::Known(rep.hodge.entry(2, 2)));
    }

    #[test]
    fn aeppli_rejects_inconsistent_hodge() {
        let rep = kato_numbers(&KatoInput::point_blowups(6, 2).unwrap()).unwrap();
        let wrong = hopf_hodge(6);
        assert!(matches!(aeppli_table(&rep.bc, &wrong), Err(Error::Duality(_))));
        assert!(aeppli_table(&rep.aeppli, &rep.hodge).is_err());
    }

    #[test]
    fn report_json_shape() {
        let rep = kato_numbers(&KatoInput::point_blowups(3, 2).unwrap()).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["hodge", "betti", "bc", "aeppli", "checks"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["bc"]["kind"], "bott_chern");
        assert_eq!(v["aeppli"]["kind"], "aeppli");
        let c = &v["checks"][0];
        assert!(c.get("name").is_some() && c.get("pass").is_some() && c.get("detail").is_some());
    }

    fn arb_input() -> impl Strategy<Value = KatoInput> {
        (3usize..6, proptest::collection::vec(0usize..4, 0..4)).prop_map(|(n, extra)| {
            let mut steps = vec![ModificationStep::up(Center::point(), n)];
            for pick in extra {
                let (z, r) = match pick {
                    0 => (Center::point(), n),
                    1 => (Center::projective(1), n - 1),
                    2 => (Center::elliptic(), n - 1),
                    _ => (Center::curve(2), n - 1),
                };
                steps.push(ModificationStep::up(z, r));
            }
            KatoInput::new(ModificationSequence::new(n, steps).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn every_report_passes(input in arb_input()) {
            let rep = kato_numbers(&input).unwrap();
            prop_assert!(rep.all_pass(), "{:?}", rep.checks);
        }
    }
}
