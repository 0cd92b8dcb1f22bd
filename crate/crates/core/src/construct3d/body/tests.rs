use super::*;
use crate::construct2d::{generate_sequences, Policy};
use crate::construct3d::{Gallery, Pyramid, PyramidSign};
use crate::geom::intersect_ray_patch3;
use crate::geom::{Ray, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn body(policy: Policy, n: usize) -> Body3D {
    let seq = generate_sequences(1.0, 0.5, policy, n).unwrap();
    build_body3(1.0, 0.5, &seq, n).unwrap()
}

fn sub(name: &str) -> SubBody {
    SubBody::from_name(name).unwrap()
}

fn cell_samples(b: &Body3D, cell: &Cell3, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec3> {
    (0..n)
        .map(|_| b.cell_point(cell, [rng.gen(), rng.gen(), rng.gen()]))
        .collect()
}

#[test]
fn surface_and_cell_counts() {
    let b = body(Policy::default(), 3);
    assert_eq!(b.cells.len(), 6 * 8 * 3);
    assert_eq!(b.surfaces.len(), 6 * 8 * (3 * 5 + 1));
    let walls = b.surfaces.iter().filter(|s| s.kind == SurfaceKind::Wall).count();
    assert_eq!(walls, 6 * 8 * 3 * 3);
    assert!(b.surfaces[..b.surfaces.len() - walls]
        .iter()
        .all(|s| s.kind != SurfaceKind::Wall));
}

#[test]
fn thin_limit_membership_examples() {
    let b = body(Policy::ThinLimit, 4);
    let yz = sub("yz");
    // p_0(0.8) = 0.82 on the thin ladder.
    assert!((b.p(0, 0.8) - 0.82).abs() < 1e-15);
    assert!(!b.sub_body_contains(yz, Vec3::new(0.7, 0.8, 0.9)));
    assert!(b.sub_body_contains(yz, Vec3::new(0.7, 0.8, 0.81)));
    assert!(b.sub_body_contains(yz, Vec3::new(-0.7, 0.8, -0.81)));
    // Outside the pyramid of z whatever the arcs say.
    assert!(!b.sub_body_contains(yz, Vec3::new(0.85, 0.8, 0.81)));
    assert!(!b.contains(Vec3::zero()));
}

#[test]
fn remark_inclusions_hold_on_cells() {
    let b = body(Policy::default(), 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for cell in &b.cells {
        let i = cell.level;
        let (ci, cn) = (b.seq.c[i], b.seq.c[i + 1]);
        for p in cell_samples(&b, cell, 40, &mut rng) {
            assert!(b.sub_body_contains(cell.sub, p));
            assert!(b.cell_contains(cell, p));
            let (x, y, z) = (p.x.abs(), p.y.abs(), p.z.abs());
            match cell.sub.name().as_str() {
                "yz" => {
                    assert!(y >= cn && y <= ci && x <= b.p(i, y) + 1e-15);
                    assert!(Pyramid::new(Axis::Z, PyramidSign::Both, 1.0).contains(p));
                    assert!(Gallery::union_contains(Axis::Y, 1.0, 0.5, p));
                }
                "xz" => {
                    assert!(x >= cn && x <= ci);
                    assert!(b.q(i, x) <= z && z <= b.p(i, x) && 0.5 <= y && y <= z);
                }
                "yx" => assert!(b.q(i, y) <= x && x <= b.p(i, y)),
                "zx" | "zy" => assert!(Gallery::union_contains(Axis::Z, 1.0, 0.5, p)),
                "xy" => assert!(Gallery::union_contains(Axis::X, 1.0, 0.5, p)),
                _ => {}
            }
        }
    }
}

#[test]
fn axis_families_are_interior_disjoint() {
    let b = body(Policy::default(), 4);
    let family = |s: SubBody| s.v;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut points: Vec<Vec3> = (0..100_000)
        .map(|_| Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    for cell in &b.cells {
        points.extend(cell_samples(&b, cell, 20, &mut rng));
    }
    for p in points {
        let inside: Vec<_> = SubBody::ALL
            .into_iter()
            .filter(|&s| b.sub_body_interior_contains(s, p))
            .collect();
        for w in inside.windows(2) {
            assert_eq!(family(w[0]), family(w[1]), "{p:?} in {inside:?}");
        }
    }
}

#[test]
fn label_swaps_map_cells_onto_each_other() {
    let b = body(Policy::default(), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let swaps: [(usize, usize, &str, &str); 3] = [(0, 1, "yz", "xz"), (1, 2, "yz", "zy"), (0, 2, "yz", "yx")];
    for cell in b.cells.iter().filter(|c| c.sub == sub("yz")) {
        for p in cell_samples(&b, cell, 10, &mut rng) {
            for (i, j, from, to) in swaps {
                assert!(b.sub_body_contains(sub(from), p));
                let (pi, pj) = (p.component(i), p.component(j));
                let q = p.with(i, pj).with(j, pi);
                assert!(b.sub_body_contains(sub(to), q), "{from}->{to} {p:?}");
            }
        }
    }
}

#[test]
fn lower_surfaces_stay_above_c1() {
    for policy in [Policy::ThinLimit, Policy::default(), Policy::ConstantFraction(0.9)] {
        let b = body(policy, 8);
        for i in 0..b.depth {
            assert!(b.q(i, b.seq.c[i + 1]) >= b.c1);
        }
    }
}

#[test]
fn upper_patch_is_hit_where_the_profile_says() {
    let b = body(Policy::default(), 3);
    let tol = Tolerances::for_diameter(2.0);
    let ray = Ray::new(Vec3::new(0.6, 0.8, 2.0), Vec3::new(0.0, 0.0, -1.0));
    let top = b
        .surfaces
        .iter()
        .find(|s| s.group == "yz:+++:p0")
        .expect("upper patch");
    let Surface3::Patch(patch) = &top.surface else {
        panic!("upper surface is a patch");
    };
    let hit = intersect_ray_patch3(&ray, patch, &tol).unwrap();
    assert!((hit.point.z - b.p(0, 0.8)).abs() < 1e-14);
    assert!(hit.normal.z > 0.0);
}

#[test]
fn rejects_inconsistent_inputs() {
    let seq = generate_sequences(1.0, 0.5, Policy::default(), 4).unwrap();
    assert!(matches!(build_body3(1.0, 0.4, &seq, 4), Err(ConstructError::InvalidSeed { .. })));
    assert!(matches!(build_body3(1.0, 1.5, &seq, 4), Err(ConstructError::InvalidSeed { .. })));
    assert!(matches!(build_body3(1.0, 0.5, &seq, 5), Err(ConstructError::InvalidDepth(5))));
    assert!(build_body3(1.0, 0.5, &seq, 2).is_ok());
}
