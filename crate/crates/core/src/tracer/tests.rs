use super::*;
use crate::construct2d::{build_thin_orthogonal, Shape2};
use crate::geom::{Aabb, Parabola2, ParabolicArc2, Segment2, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn down(x: f64) -> Ray<Vec2> {
    Ray::new(Vec2::new(x, 2.0), Vec2::new(0.0, -1.0))
}

fn unit_box() -> Aabb<Vec2> {
    Aabb::from_points([Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)])
}

#[test]
fn thin_outer_band_four_reflections() {
    let scene = build_thin_orthogonal(4).unwrap().scene();
    let r = trace(&scene, &down(-0.75));
    assert_eq!(r.status, TraceStatus::Exited);
    assert_eq!(r.reflections.len(), 4);
    let exit = r.exit.unwrap();
    assert!((exit.dir - Vec2::new(0.0, -1.0)).norm() < 1e-12);
    assert!((exit.origin.x + 0.75).abs() < 1e-9);
    let groups: Vec<_> = r.reflections.iter().map(|h| scene.group_of(h.surface_id)).collect();
    assert_eq!(groups, ["P:1", "P:2", "Q:2", "Q:1"]);
}

#[test]
fn thin_second_band_four_reflections() {
    let scene = build_thin_orthogonal(4).unwrap().scene();
    let r = trace(&scene, &down(-0.3));
    assert_eq!(r.status, TraceStatus::Exited);
    assert_eq!(r.reflections.len(), 4);
    assert_eq!(scene.group_of(r.reflections[0].surface_id), "P:2");
    let exit = r.exit.unwrap();
    assert!((exit.dir - Vec2::new(0.0, -1.0)).norm() < 1e-12);
    assert!((exit.origin.x + 0.3).abs() < 1e-9);
}

#[test]
fn junction_is_singular() {
    let scene = build_thin_orthogonal(4).unwrap().scene();
    let r = trace(&scene, &down(-0.5));
    assert_eq!(r.status, TraceStatus::SingularHit);
    assert!(r.exit.is_none());
    assert!(r.terminal.unwrap().at_boundary);
}

#[test]
fn empty_scene_has_no_hits() {
    let scene: Scene<Shape2> = Scene::new(Vec::new(), unit_box());
    assert!(nearest_hit(&scene, &down(0.1)).is_none());
    let r = trace(&scene, &down(0.1));
    assert_eq!(r.status, TraceStatus::Exited);
    assert!(r.reflections.is_empty());
}

#[test]
fn nearer_of_stacked_confocal_arcs() {
    let focus = Vec2::new(0.0, 1.0);
    let arc = |f: f64| {
        let p = Parabola2::new(focus, Vec2::new(0.0, 1.0), f).unwrap();
        Shape2::Arc(ParabolicArc2::over_abscissas(p, -1.0, 1.0).unwrap())
    };
    // Lower arc listed first so the ordering cannot come from ids.
    let scene = Scene::new(
        vec![
            (arc(0.5), Role::Mirror, "low".into()),
            (arc(0.25), Role::Mirror, "high".into()),
        ],
        unit_box(),
    );
    let hit = nearest_hit(&scene, &down(0.2)).unwrap();
    assert_eq!(scene.group_of(hit.surface_id), "high");
    assert!((hit.point.y - (0.04 + 0.75)).abs() < 1e-12);
}

#[test]
fn downward_ray_meets_outer_arc_first() {
    let scene = build_thin_orthogonal(3).unwrap().scene();
    for x in [0.55, 0.7, 0.95, -0.6] {
        let hit = nearest_hit(&scene, &down(x)).unwrap();
        assert_eq!(scene.group_of(hit.surface_id), "P:1", "x = {x}");
    }
}

#[test]
fn facing_mirrors_hit_the_cap() {
    let seg = |y: f64| Shape2::Segment(Segment2::new(Vec2::new(-1.0, y), Vec2::new(1.0, y)));
    let scene = Scene::new(
        vec![
            (seg(-0.5), Role::Mirror, "a".into()),
            (seg(0.5), Role::Mirror, "b".into()),
        ],
        unit_box(),
    );
    let r = trace(&scene, &Ray::new(Vec2::new(0.1, 0.0), Vec2::new(0.0, 1.0)));
    assert_eq!(r.status, TraceStatus::BounceCapExceeded);
    assert_eq!(r.reflections.len(), scene.max_bounces);
}

#[test]
fn wall_hit_is_an_anomaly() {
    let wall = Shape2::Segment(Segment2::new(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0)));
    let scene = Scene::new(vec![(wall, Role::Wall, "w".into())], unit_box());
    let r = trace(&scene, &down(0.3));
    assert_eq!(r.status, TraceStatus::WallAnomaly);
}

#[test]
fn reversed_traces_retrace_the_path() {
    let scene = build_thin_orthogonal(6).unwrap().scene();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..400 {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let angle: f64 = rng.gen_range(-0.3..0.3);
        let ray = Ray::new(Vec2::new(x, 2.0), Vec2::new(angle.sin(), -angle.cos()));
        let fwd = trace(&scene, &ray);
        if fwd.status != TraceStatus::Exited {
            continue;
        }
        let back = trace_reversed(&scene, &fwd).unwrap();
        assert_eq!(back.status, TraceStatus::Exited);
        assert_eq!(back.reflections.len(), fwd.reflections.len());
        for (a, b) in fwd.reflections.iter().zip(back.reflections.iter().rev()) {
            assert!((a.point - b.point).norm() < 1e-9);
        }
        checked += 1;
    }
    assert!(checked > 300);
}

#[test]
fn traces_are_deterministic_and_unit_speed() {
    let scene = build_thin_orthogonal(5).unwrap().scene();
    for k in 0..200 {
        let ray = down(-0.99 + 0.0099 * k as f64 + 1e-4);
        let a = trace(&scene, &ray);
        let b = trace(&scene, &ray);
        assert_eq!(a, b);
        for r in &a.reflections {
            assert!((r.outgoing.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn path_ends_on_the_scene_box() {
    let scene = build_thin_orthogonal(2).unwrap().scene();
    let r = trace(&scene, &down(-0.75));
    let path = r.path(&scene);
    assert_eq!(path.len(), 6);
    assert!((path[5].y + 1.0).abs() < 1e-12);
}
