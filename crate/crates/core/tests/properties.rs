use std::f64::consts::PI;

use invisibody::geom::{
    apply_homothety, intersect_ray_parabola, reflect, Homothety2, Parabola2, ParabolicArc2, Tolerances,
};
use invisibody::tracer::Primitive;
use invisibody::verify::FlowSpec;
use invisibody::*;
use proptest::prelude::*;

fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}

prop_compose! {
    fn tilted_arc()(
        fx in -1.0f64..1.0,
        fy in -1.0f64..1.0,
        angle in 0.0..2.0 * PI,
        f in 0.01f64..1.0,
        u0 in -2.0f64..2.0,
        len in 0.05f64..2.0,
    ) -> ParabolicArc2 {
        let par = Parabola2::new(Vec2::new(fx, fy), unit(angle), f).unwrap();
        ParabolicArc2::new(par, u0, u0 + len).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rays_store_unit_directions(x in -1e3f64..1e3, y in -1e3f64..1e3, z in -1e3f64..1e3) {
        prop_assume!(x.abs() + y.abs() > 1e-6);
        prop_assert!((Ray2::new(Vec2::new(0.0, 0.0), Vec2::new(x, y)).dir.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((Ray3::new(Vec3::new(0.0, 0.0, 0.0), Vec3::new(x, y, z)).dir.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn arc_box_holds_every_point(arc in tilted_arc()) {
        let b = arc.bounds();
        let pad = 1e-12 * (1.0 + b.extent());
        for p in arc.sample(200) {
            prop_assert!(b.padded(pad).contains(p), "{:?} outside {:?}", p, b);
        }
    }

    #[test]
    fn arc_is_strictly_convex_in_its_frame(arc in tilted_arc()) {
        let pts: Vec<(f64, f64)> = arc.sample(20).iter().map(|&p| arc.parabola.to_local(p)).collect();
        for w in pts.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let chord = a.1 + (c.1 - a.1) * (b.0 - a.0) / (c.0 - a.0);
            prop_assert!(b.1 < chord);
        }
    }

    #[test]
    fn axis_parallel_rays_reflect_through_focus(arc in tilted_arc(), s in 0.0f64..1.0) {
        let par = arc.parabola;
        let u = arc.t_min + s * (arc.t_max - arc.t_min);
        let target = par.point_at(u);
        let origin = target + par.axis * 5.0;
        let ray = Ray2::new(origin, -par.axis);
        let tol = Tolerances::for_diameter(10.0);
        if let Some(hit) = intersect_ray_parabola(&ray, &arc, &tol) {
            prop_assert!((ray.at(hit.t) - hit.point).norm() <= 1e-10);
            let out = reflect(ray.dir, hit.normal);
            let to_focus = (par.focus - hit.point).normalized();
            prop_assert!((out - to_focus).norm() <= 1e-8, "{:?} vs {:?}", out, to_focus);
            let tangent = par.transverse() + par.axis * (par.to_local(hit.point).0 / (2.0 * par.focal_length));
            prop_assert!(hit.normal.dot(tangent.normalized()).abs() <= 1e-10);
        }
    }

    #[test]
    fn homothety_scales_about_its_centre(
        cx in -2.0f64..2.0, cy in -2.0f64..2.0, r in 0.01f64..3.0, px in -2.0f64..2.0, py in -2.0f64..2.0,
    ) {
        let c = Vec2::new(cx, cy);
        let p = Vec2::new(px, py);
        let h = Homothety2::new(c, r);
        let q = apply_homothety(&h, p);
        prop_assert!((q - (c + (p - c) * r)).norm() <= 1e-12);
        prop_assert!((apply_homothety(&h.inverse(), q) - p).norm() <= 1e-12);
    }

    #[test]
    fn parabola_homothety_keeps_points_on_the_image(
        arc in tilted_arc(), cx in -1.0f64..1.0, cy in -1.0f64..1.0, r in 0.1f64..2.0,
    ) {
        let h = Homothety2::new(Vec2::new(cx, cy), r);
        let image = arc.parabola.homothetic(&h);
        for p in arc.sample(16) {
            let q = apply_homothety(&h, p);
            prop_assert!(image.focus_directrix_residual(q).abs() <= 1e-9);
        }
    }

    #[test]
    fn traces_obey_the_specular_law(x in -0.999f64..0.999, angle in -0.3f64..0.3) {
        let scene = build_thin_orthogonal(4).unwrap().scene();
        let rec = trace(&scene, &Ray2::new(Vec2::new(x, 1.5), Vec2::new(angle.sin(), -angle.cos())));
        let mut dir = rec.entry.dir;
        for r in &rec.reflections {
            prop_assert_eq!(r.incoming, dir);
            let hit = scene.surfaces[r.surface_id].shape.intersect(&Ray2::new(r.point - dir * 1e-6, dir), &scene.tolerances);
            if let Some(h) = hit.filter(|h| (h.point - r.point).norm() <= 1e-9) {
                prop_assert!((reflect(dir, h.normal) - r.outgoing).norm() <= 1e-12);
            }
            prop_assert!((r.outgoing.norm() - 1.0).abs() <= 1e-12);
            dir = r.outgoing;
        }
        if rec.status == TraceStatus::Exited {
            let exit = rec.exit.unwrap();
            prop_assert_eq!(exit.dir, dir);
            let far = exit.at(scene.exit_distance(&exit) + 1e-9);
            prop_assert!(!scene.bounds.contains(far));
        }
    }

    #[test]
    fn report_totals_and_verdicts_are_consistent(seed in any::<u64>(), angle in 0.0..2.0 * PI) {
        let body = build_thin_orthogonal(3).unwrap();
        let scene = body.scene();
        let flow = FlowSpec::monte_carlo(unit(angle), 200, seed).with_margin(1e-6);
        if let Ok(r) = verify::verify_invisibility(&scene, &flow, 1e-9) {
            prop_assert_eq!(r.rays_counted(), r.rays_total - r.rays_excluded - r.rays_singular);
            prop_assert!(!r.invisible || r.zero_resistance);
        }
    }
}

#[test]
fn scene_surfaces_lie_in_the_box() {
    let thin = build_thin_orthogonal(6).unwrap().scene();
    for s in &thin.surfaces {
        let b = s.shape.bounds();
        assert!(thin.bounds.contains(b.min) && thin.bounds.contains(b.max), "{}", s.group);
    }
    assert!(thin.diameter > 0.0);
    let seq = generate_sequences(1.0, 0.5, Policy::default(), 2).unwrap();
    let body = build_body3(1.0, 0.5, &seq, 2).unwrap().scene();
    for s in &body.surfaces {
        let b = s.shape.bounds();
        assert!(body.bounds.contains(b.min) && body.bounds.contains(b.max), "{}", s.group);
    }
}
