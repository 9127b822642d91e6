//! Smooth simplicial fans refining the positive orthant, and the Betti/Hodge
//! numbers of the toric Kato manifolds they define.
//!
//! Cones are stored as sorted ray-index sets; faces are enumerated on demand.
//! With `a_k` the number of `k`-dimensional cones,
//!
//! ```text
//! b_{2j}(ĈPⁿ) = Σ_{s=j}^{n} (−1)^{s−j} C(s,j) (a_{n−s} + C(n,s+1))
//! ```
//!
//! and the Kato manifold has `b_{2j} = b_{2j}(ĈPⁿ) − 1` for `1 <= j <= n−1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diamond::{hopf_corners, BettiVector, HodgeDiamond};
use crate::error::{Error, Result};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// `a_0..a_n`, with `a_0 = 1` for the zero cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCounts {
    pub a: Vec<u64>,
}

impl ConeCounts {
    pub fn euler_characteristic(&self) -> i64 {
        self.a
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }
}

/// The fan of `Cⁿ`: rays `e_1..e_n`, one maximal cone.
pub fn orthant_fan(n: usize) -> Result<Fan> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    let rays = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Ok(Fan {
        n,
        rays,
        max_cones: vec![(0..n).collect()],
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(pivot) = (c..k).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if pivot != c {
            m.swap(pivot, c);
            sign = -sign;
        }
        for r in c + 1..k {
            for j in c + 1..k {
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    sign * m[k - 1][k - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// gcd of the maximal minors of the `k × n` matrix of the given rays. It is 1
/// exactly when the rays are part of a lattice basis, and 0 when they are
/// linearly dependent.
fn minor_gcd(rays: &[&[i64]], n: usize) -> i128 {
    let k = rays.len();
    combinations(n, k).into_iter().fold(0i128, |g, cols| {
        let m = rays
            .iter()
            .map(|r| cols.iter().map(|&c| r[c] as i128).collect())
            .collect();
        let d = det(m).abs();
        let (mut a, mut b) = (g, d);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    })
}

impl Fan {
    fn cone_rays(&self, cone: &[usize]) -> Vec<&[i64]> {
        cone.iter().map(|&i| self.rays[i].as_slice()).collect()
    }

    /// All cones (faces of maximal cones, zero cone included), deduplicated.
    pub fn all_cones(&self) -> BTreeSet<Vec<usize>> {
        let mut faces = BTreeSet::new();
        for cone in &self.max_cones {
            let k = cone.len();
            for mask in 0u64..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| cone[i]).collect();
                faces.insert(face);
            }
        }
        if faces.is_empty() {
            faces.insert(Vec::new());
        }
        faces
    }

    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|m| cone.iter().all(|i| m.contains(i)))
    }

    pub fn is_orthant(&self) -> bool {
        orthant_fan(self.n).map(|o| o == *self).unwrap_or(false)
    }
}

fn normalize_cone(cone: &[usize]) -> Result<Vec<usize>> {
    let mut c = cone.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() != cone.len() {
        return Err(Error::InvalidFan(format!("repeated ray index in cone {cone:?}")));
    }
    Ok(c)
}

/// Star subdivision of `fan` at `cone`: adds the primitive ray through the sum
/// of the cone's rays and splits every maximal cone containing `cone`.
pub fn star_subdivide(fan: &Fan, cone: &[usize]) -> Result<Fan> {
    let cone = normalize_cone(cone)?;
    if cone.len() < 2 {
        return Err(Error::InvalidFan(format!(
            "star subdivision needs a cone of dimension >= 2, got {cone:?}"
        )));
    }
    if cone.iter().any(|&i| i >= fan.rays.len()) || !fan.contains_cone(&cone) {
        return Err(Error::InvalidFan(format!("cone {cone:?} is not in the fan")));
    }
    let mut sum = vec![0i64; fan.n];
    for &i in &cone {
        for (s, x) in sum.iter_mut().zip(&fan.rays[i]) {
            *s += x;
        }
    }
    let rho = primitive(&sum);
    if fan.rays.contains(&rho) {
        return Err(Error::InvalidFan(format!("ray {rho:?} already present")));
    }
    let new_index = fan.rays.len();
    let mut rays = fan.rays.clone();
    rays.push(rho);

    let mut max_cones = Vec::new();
    for m in &fan.max_cones {
        if cone.iter().all(|i| m.contains(i)) {
            for &drop in &cone {
                let mut c: Vec<usize> = m.iter().copied().filter(|&i| i != drop).collect();
                c.push(new_index);
                c.sort_unstable();
                max_cones.push(c);
            }
        } else {
            max_cones.push(m.clone());
        }
    }
    let out = Fan {
        n: fan.n,
        rays,
        max_cones,
    };
    for c in &out.max_cones {
        if minor_gcd(&out.cone_rays(c), out.n) != 1 {
            return Err(Error::InvalidFan(format!("subdivided cone {c:?} is not smooth")));
        }
    }
    Ok(out)
}

/// Applies `star_subdivide` for each cone of `script` in order, starting from
/// the orthant.
pub fn fan_from_script(n: usize, script: &[Vec<usize>]) -> Result<Fan> {
    script
        .iter()
        .try_fold(orthant_fan(n)?, |fan, cone| star_subdivide(&fan, cone))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Whether the support equals the orthant is never verified.
    pub support_unchecked: bool,
}

/// Ray dimension, primitivity and distinctness; cone indices, simpliciality
/// and unimodularity. Findings are reported, never raised.
pub fn validate_fan(fan: &Fan) -> FanReport {
    let mut checks = Vec::new();
    let n = fan.n;

    let bad_dim: Vec<usize> = (0..fan.rays.len()).filter(|&i| fan.rays[i].len() != n).collect();
    checks.push(if bad_dim.is_empty() {
        Check::pass("ray_dimension", format!("all rays lie in Z^{n}"))
    } else {
        Check::fail("ray_dimension", format!("rays {bad_dim:?} have the wrong length"))
    });

    let bad_prim: Vec<String> = fan
        .rays
        .iter()
        .filter(|r| r.iter().fold(0, |g, &x| gcd(g, x)) != 1)
        .map(|r| format!("{r:?}"))
        .collect();
    checks.push(if bad_prim.is_empty() {
        Check::pass("rays_primitive", "every ray is primitive")
    } else {
        Check::fail("rays_primitive", format!("non-primitive ray {}", bad_prim.join(", ")))
    });

    let distinct = fan.rays.iter().collect::<BTreeSet<_>>().len() == fan.rays.len();
    checks.push(Check::new(
        "rays_distinct",
        distinct,
        if distinct { "rays pairwise distinct" } else { "repeated ray" },
    ));

    let mut structural = Vec::new();
    let mut not_simplicial = Vec::new();
    let mut not_smooth = Vec::new();
    for cone in &fan.max_cones {
        let ok_indices = cone.iter().all(|&i| i < fan.rays.len())
            && normalize_cone(cone).is_ok()
            && cone.len() <= n;
        if !ok_indices || !bad_dim.is_empty() {
            structural.push(format!("{cone:?}"));
            continue;
        }
        match minor_gcd(&fan.cone_rays(cone), n) {
            0 => not_simplicial.push(format!("{cone:?}")),
            1 => {}
            g => not_smooth.push(format!("{cone:?} (index {g})")),
        }
    }
    checks.push(if structural.is_empty() {
        Check::pass("cone_indices", "cones reference valid, distinct rays")
    } else {
        Check::fail("cone_indices", format!("malformed cones {}", structural.join(", ")))
    });
    checks.push(if not_simplicial.is_empty() {
        Check::pass("cones_simplicial", "cone rays linearly independent")
    } else {
        Check::fail("cones_simplicial", format!("dependent rays in {}", not_simplicial.join(", ")))
    });
    checks.push(if not_smooth.is_empty() {
        Check::pass("cones_smooth", "every cone is unimodular")
    } else {
        Check::fail("cones_smooth", format!("not smooth: {}", not_smooth.join(", ")))
    });

    // The modification must be an isomorphism away from the origin: a cone
    // meeting the boundary of the orthant must be a face of the orthant.
    let mut boundary = Vec::new();
    if bad_dim.is_empty() && structural.is_empty() {
        for cone in fan.all_cones() {
            let rays = fan.cone_rays(&cone);
            let on_boundary = (0..n).any(|i| rays.iter().all(|r| r[i] == 0));
            let standard = rays
                .iter()
                .all(|r| r.iter().filter(|&&x| x == 1).count() == 1 && r.iter().all(|&x| x == 0 || x == 1));
            if !cone.is_empty() && on_boundary && !standard {
                boundary.push(format!("{cone:?}"));
            }
        }
    }
    checks.push(if boundary.is_empty() {
        Check::pass("boundary_unmodified", "only cones inside the open orthant were subdivided")
    } else {
        Check::fail(
            "boundary_unmodified",
            format!("cones on the orthant boundary are not coordinate faces: {}", boundary.join(", ")),
        )
    });

    FanReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
        support_unchecked: true,
    }
}

pub fn cone_counts(fan: &Fan) -> ConeCounts {
    let mut a = vec![0u64; fan.n + 1];
    for face in fan.all_cones() {
        if face.len() <= fan.n {
            a[face.len()] += 1;
        }
    }
    ConeCounts { a }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `Σ_{s=j}^{n} (−1)^{s−j} C(s,j) (a_{n−s} + C(n,s+1))` for `j = 0..=n`: the
/// even Betti numbers of the induced modification of `CPⁿ`.
pub fn toric_cpn_hat_sums(counts: &ConeCounts) -> Vec<i64> {
    let n = counts.a.len() - 1;
    (0..=n)
        .map(|j| {
            (j..=n)
                .map(|s| {
                    let sign = if (s - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(s, j) * (counts.a[n - s] as i64 + binomial(n, s + 1))
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricKatoNumbers {
    pub hodge: HodgeDiamond,
    pub betti: BettiVector,
    pub counts: ConeCounts,
    /// The fan is the orthant itself: the numbers are those of a Hopf manifold.
    pub trivial_modification: bool,
}

/// Betti and Hodge numbers of the toric Kato manifold defined by `fan`.
///
/// Hodge numbers sit on the diagonal, `h^{p,p} = b_{2p}` for `1 <= p <= n−1`,
/// plus the four corner ones.
pub fn toric_kato_numbers(fan: &Fan) -> Result<ToricKatoNumbers> {
    let n = fan.n;
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    let report = validate_fan(fan);
    if !report.pass {
        let failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Error::InvalidFan(failed.join("; ")));
    }
    let counts = cone_counts(fan);
    let sums = toric_cpn_hat_sums(&counts);
    let top = 2 * n;
    let mut b = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let v = if k <= 1 || k + 1 >= top {
            1
        } else if k % 2 == 0 {
            let v = sums[k / 2] - 1;
            u64::try_from(v).map_err(|_| {
                Error::InvalidFan(format!("negative Betti number b_{k} = {v}; fan does not refine the orthant"))
            })?
        } else {
            0
        };
        b.push(v);
    }
    let betti = BettiVector::new(n, true, b)
        .map_err(|e| Error::InvalidFan(format!("Betti numbers not symmetric ({e}); fan does not refine the orthant")))?;
    let corners = hopf_corners(n);
    let hodge = HodgeDiamond::from_fn(n, true, |p, q| {
        if corners.contains(&(p, q)) {
            1
        } else if p == q && (1..n).contains(&p) {
            betti.get(2 * p as isize)
        } else {
            0
        }
    })?;
    Ok(ToricKatoNumbers {
        hodge,
        betti,
        counts,
        trivial_modification: fan.is_orthant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diamond::{check_decomposition, hopf_betti};
    use proptest::prelude::*;

    fn once() -> Fan {
        star_subdivide(&orthant_fan(3).unwrap(), &[0, 1, 2]).unwrap()
    }

    fn twice() -> Fan {
        star_subdivide(&once(), &[0, 1, 3]).unwrap()
    }

    #[test]
    fn orthant_counts() {
        assert_eq!(cone_counts(&orthant_fan(3).unwrap()).a, vec![1, 3, 3, 1]);
        assert_eq!(cone_counts(&orthant_fan(1).unwrap()).a, vec![1, 1]);
        assert_eq!(cone_counts(&orthant_fan(4).unwrap()).a, vec![1, 4, 6, 4, 1]);
        assert!(orthant_fan(0).is_err());
    }

    #[test]
    fn subdivision_counts() {
        assert_eq!(cone_counts(&once()).a, vec![1, 4, 6, 3]);
        let f = twice();
        assert_eq!(cone_counts(&f).a, vec![1, 5, 9, 5]);
        assert_eq!(cone_counts(&f).euler_characteristic(), 0);
    }

    /// Enumerates the faces of the once-subdivided orthant by hand.
    #[test]
    fn subdivision_faces_by_hand() {
        let f = once();
        assert_eq!(f.rays[3], vec![1, 1, 1]);
        let mut expect: BTreeSet<Vec<usize>> = BTreeSet::new();
        for m in [[0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            expect.insert(m.to_vec());
            for i in 0..3 {
                expect.insert(m.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect());
                expect.insert(vec![m[i]]);
            }
        }
        expect.insert(vec![]);
        assert_eq!(f.all_cones(), expect);
    }

    #[test]
    fn plane_subdivision() {
        let f = star_subdivide(&orthant_fan(2).unwrap(), &[0, 1]).unwrap();
        assert_eq!(f.rays, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(cone_counts(&f).a, vec![1, 3, 2]);
    }

    #[test]
    fn subdivision_errors() {
        let o = orthant_fan(3).unwrap();
        assert!(star_subdivide(&o, &[0]).is_err());
        assert!(star_subdivide(&o, &[0, 5]).is_err());
        let f = once();
        // {e1, e2, e3} was split; {e1, e2} survives.
        assert!(star_subdivide(&f, &[0, 1, 2]).is_err());
        assert!(star_subdivide(&f, &[0, 1]).is_ok());
    }

    #[test]
    fn validation_examples() {
        assert!(validate_fan(&orthant_fan(4).unwrap()).pass);
        let bad = Fan {
            n: 3,
            rays: vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            max_cones: vec![vec![0, 1, 2]],
        };
        let r = validate_fan(&bad);
        assert!(!r.pass);
        assert!(!r.checks.iter().find(|c| c.name == "rays_primitive").unwrap().pass);

        let bad = Fan {
            n: 3,
            rays: vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]],
            max_cones: vec![vec![0, 1, 2]],
        };
        assert_eq!(det(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]), 2);
        let r = validate_fan(&bad);
        let smooth = r.checks.iter().find(|c| c.name == "cones_smooth").unwrap();
        assert!(!smooth.pass && smooth.detail.contains("index 2"));
        assert!(r.support_unchecked);

        let dependent = Fan {
            n: 3,
            rays: vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]],
            max_cones: vec![vec![0, 1, 2]],
        };
        assert!(!validate_fan(&dependent).checks.iter().find(|c| c.name == "cones_simplicial").unwrap().pass);
    }

    #[test]
    fn boundary_subdivision_is_not_kato_data() {
        // Blowing up the coordinate line {z_1 = z_2 = 0} is not a modification
        // over the origin.
        let f = star_subdivide(&orthant_fan(3).unwrap(), &[0, 1]).unwrap();
        let r = validate_fan(&f);
        assert!(!r.checks.iter().find(|c| c.name == "boundary_unmodified").unwrap().pass);
        assert!(toric_kato_numbers(&f).is_err());
        // A curve inside the exceptional divisor is fine.
        let g = star_subdivide(&once(), &[0, 3]).unwrap();
        assert!(validate_fan(&g).pass);
        let t = toric_kato_numbers(&g).unwrap();
        assert_eq!((t.betti.get(2), t.betti.get(4)), (2, 2));
    }

    #[test]
    fn lower_dimensional_cone_smoothness() {
        // (1,0,0),(1,2,0) span a sublattice of index 2 inside their plane.
        assert_eq!(minor_gcd(&[&[1, 0, 0], &[1, 2, 0]], 3), 2);
        assert_eq!(minor_gcd(&[&[1, 0, 0], &[1, 1, 0]], 3), 1);
    }

    #[test]
    fn toric_numbers_examples() {
        let t = toric_kato_numbers(&once()).unwrap();
        assert_eq!((t.betti.get(2), t.betti.get(4)), (1, 1));
        let t = toric_kato_numbers(&twice()).unwrap();
        assert_eq!((t.betti.get(2), t.betti.get(4)), (2, 2));
        assert_eq!((t.hodge.entry(1, 1), t.hodge.entry(2, 2)), (2, 2));
        let t = toric_kato_numbers(&orthant_fan(3).unwrap()).unwrap();
        assert!(t.trivial_modification);
        assert_eq!(t.betti, hopf_betti(3));
        assert!(toric_kato_numbers(&orthant_fan(2).unwrap()).is_err());
    }

    #[test]
    fn binomial_identity_on_orthant() {
        for n in 1..=10 {
            let sums = toric_cpn_hat_sums(&cone_counts(&orthant_fan(n).unwrap()));
            assert_eq!(sums, vec![1; n + 1], "n={n}");
        }
    }

    #[test]
    fn fan_json() {
        let json = serde_json::to_string(&once()).unwrap();
        assert!(json.starts_with(r#"{"n":3,"rays":[[1,0,0],"#));
        let back: Fan = serde_json::from_str(&json).unwrap();
        assert_eq!(back, once());
    }

    fn arb_picks() -> impl Strategy<Value = Vec<(usize, u64)>> {
        proptest::collection::vec((0usize..64, any::<u64>()), 0..5)
    }

    /// Applies picks `(cone index, subset mask)`: subdivides a face of
    /// dimension >= 2 of a maximal cone, falling back to the maximal cone when
    /// the face lies on the orthant boundary.
    fn apply_picks(n: usize, picks: &[(usize, u64)]) -> Fan {
        let mut fan = orthant_fan(n).unwrap();
        for &(ci, mask) in picks {
            let m = fan.max_cones[ci % fan.max_cones.len()].clone();
            let mut face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
            let interior = (0..n).all(|i| face.iter().any(|&r| fan.rays[r][i] != 0));
            if face.len() < 2 || !interior {
                face = m.clone();
            }
            fan = star_subdivide(&fan, &face).unwrap();
        }
        fan
    }

    proptest! {
        #[test]
        fn subdivision_preserves_euler_and_validity(n in 2usize..5, picks in arb_picks()) {
            let fan = apply_picks(n, &picks);
            prop_assert!(validate_fan(&fan).pass);
            let c = cone_counts(&fan);
            prop_assert_eq!(c.a[0], 1);
            // The cones of any subdivision of the orthant cover a ball.
            prop_assert_eq!(c.euler_characteristic(), 0);
        }

        #[test]
        fn toric_numbers_decompose(n in 3usize..5, picks in arb_picks()) {
            let fan = apply_picks(n, &picks);
            let t = toric_kato_numbers(&fan).unwrap();
            prop_assert!(check_decomposition(&t.hodge, &t.betti).unwrap().pass);
            prop_assert!(t.hodge.is_serre_symmetric());
            prop_assert!(t.betti.is_poincare_symmetric());
        }
    }
}
