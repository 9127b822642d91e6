//! Built-in inputs shared by the acceptance suite and `kato verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kato::KatoInput;
use crate::modifications::{Center, ModificationSequence, ModificationStep};
use crate::toric::{orthant_fan, star_subdivide, Fan};

pub struct SequenceCase {
    pub name: String,
    pub input: KatoInput,
}

pub struct FanCase {
    pub name: String,
    pub fan: Fan,
    /// Cones subdivided, in order.
    pub script: Vec<Vec<usize>>,
}

fn seq(n: usize, steps: Vec<ModificationStep>) -> KatoInput {
    KatoInput::new(ModificationSequence::new(n, steps).expect("valid corpus sequence"))
        .expect("valid Kato data")
}

/// Point blow-ups for `3 <= n <= 6`, `1 <= r <= 5`, plus blow-ups along
/// curves and surfaces inside exceptional divisors and a blow-down.
pub fn builtin_sequences() -> Vec<SequenceCase> {
    let mut out = Vec::new();
    for n in 3..=6 {
        for r in 1..=5 {
            out.push(SequenceCase {
                name: format!("points_n{n}_r{r}"),
                input: KatoInput::point_blowups(n, r).expect("n >= 3"),
            });
        }
    }
    let p = Center::point;
    let mut named = |name: &str, input: KatoInput| {
        out.push(SequenceCase {
            name: name.into(),
            input,
        })
    };
    named(
        "elliptic_n4",
        seq(4, vec![ModificationStep::up(p(), 4), ModificationStep::up(Center::elliptic(), 3)]),
    );
    named(
        "line_n3",
        seq(3, vec![ModificationStep::up(p(), 3), ModificationStep::up(Center::projective(1), 2)]),
    );
    named(
        "genus2_n3",
        seq(3, vec![ModificationStep::up(p(), 3), ModificationStep::up(Center::curve(2), 2)]),
    );
    named(
        "plane_n4",
        seq(4, vec![ModificationStep::up(p(), 4), ModificationStep::up(Center::projective(2), 2)]),
    );
    named(
        "mixed_n5",
        seq(
            5,
            vec![
                ModificationStep::up(p(), 5),
                ModificationStep::up(Center::projective(2), 3),
                ModificationStep::up(Center::elliptic(), 4),
                ModificationStep::up(p(), 5),
            ],
        ),
    );
    named(
        "up_down_n3",
        seq(
            3,
            vec![
                ModificationStep::up(p(), 3),
                ModificationStep::up(p(), 3),
                ModificationStep::up(p(), 3),
                ModificationStep::down(p(), 3),
            ],
        ),
    );
    out
}

/// Whether the cone's relative interior lies in the open orthant.
pub fn is_interior_cone(fan: &Fan, cone: &[usize]) -> bool {
    (0..fan.n).all(|i| cone.iter().any(|&r| fan.rays[r][i] != 0))
}

/// Subdivides a seeded choice of interior cone of dimension >= 2.
pub fn random_subdivision<R: Rng>(rng: &mut R, fan: &Fan) -> (Fan, Vec<usize>) {
    let m = &fan.max_cones[rng.gen_range(0..fan.max_cones.len())];
    let mut face: Vec<usize> = m.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if face.len() < 2 || !is_interior_cone(fan, &face) {
        face = m.clone();
    }
    let next = star_subdivide(fan, &face).expect("interior smooth cone");
    (next, face)
}

/// Seeded fans for `3 <= n <= 5` with 0 to 6 star subdivisions.
pub fn builtin_fans() -> Vec<FanCase> {
    let mut out = Vec::new();
    for n in 3..=5 {
        for k in 0..=6 {
            let mut rng = ChaCha8Rng::seed_from_u64((n * 100 + k) as u64);
            let mut fan = orthant_fan(n).expect("n >= 1");
            let mut script = Vec::new();
            for _ in 0..k {
                let (next, cone) = random_subdivision(&mut rng, &fan);
                fan = next;
                script.push(cone);
            }
            out.push(FanCase {
                name: format!("fan_n{n}_k{k}"),
                fan,
                script,
            });
        }
    }
    out
}

/// Every sequence of `r` star subdivisions of maximal cones, starting at the
/// orthant.
pub fn all_maximal_subdivisions(n: usize, r: usize) -> Vec<Fan> {
    let mut level = vec![orthant_fan(n).expect("n >= 1")];
    for _ in 0..r {
        level = level
            .iter()
            .flat_map(|f| {
                f.max_cones
                    .iter()
                    .map(|c| star_subdivide(f, c).expect("maximal cones subdivide"))
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::validate_fan;

    #[test]
    fn corpus_is_valid() {
        assert_eq!(builtin_sequences().len(), 26);
        for case in builtin_fans() {
            assert!(validate_fan(&case.fan).pass, "{}", case.name);
            assert_eq!(case.script.len(), case.name.chars().last().unwrap().to_digit(10).unwrap() as usize);
        }
    }

    #[test]
    fn enumeration_sizes() {
        // 1 · 3 · 5 maximal-cone choices in dimension 3.
        assert_eq!(all_maximal_subdivisions(3, 3).len(), 15);
        assert_eq!(all_maximal_subdivisions(4, 2).len(), 4);
        assert_eq!(all_maximal_subdivisions(3, 0).len(), 1);
    }
}
