//! Property tests for the discretization, samplers, verifier and formatter.

use helixforge_core::verify::DEFAULT_SAMPLES_PER_SEGMENT;
use helixforge_core::*;
use proptest::prelude::*;

/// `(radius, delta)` with radius in [0.1, 1000] and delta/radius log-uniform
/// in [1e-6, 0.5].
fn radius_and_delta() -> impl Strategy<Value = (f64, f64)> {
    (0.1f64..1000.0, -6.0f64..(0.5f64).log10()).prop_map(|(r, e)| (r, r * 10f64.powf(e)))
}

fn disc(r: f64, delta: f64) -> Discretization {
    discretize_count(&ToleranceSpec::new(r, delta).unwrap())
}

proptest! {
    #[test]
    fn realized_sagitta_within_tolerance((r, delta) in radius_and_delta()) {
        let d = disc(r, delta);
        prop_assert!(sagitta(r, d.count).unwrap() <= delta);
        prop_assert!(d.count as f64 > d.raw_count);
    }

    #[test]
    fn count_within_one_of_oracle((r, delta) in radius_and_delta()) {
        let m = oracle_min_count(r, delta).unwrap();
        let n = disc(r, delta).count;
        prop_assert!(n == m || n == m + 1, "count {n} oracle {m}");
    }

    #[test]
    fn scale_invariant((r, delta) in radius_and_delta(), k in 1e-3f64..1e3) {
        prop_assert_eq!(disc(r, delta).count, disc(k * r, k * delta).count);
        prop_assert_eq!(oracle_min_count(r, delta), oracle_min_count(k * r, k * delta));
    }

    #[test]
    fn pythagorean_geometry((r, delta) in radius_and_delta()) {
        let d = disc(r, delta);
        let lhs = d.apothem * d.apothem + d.height * d.height;
        prop_assert!((lhs - r * r).abs() <= 1e-9 * r * r);
        prop_assert!(d.half_angle > 0.0 && d.half_angle < std::f64::consts::FRAC_PI_2);
        prop_assert!((chord_length(&d) - 2.0 * d.height).abs() == 0.0);
    }

    #[test]
    fn smaller_tolerance_never_fewer_points(
        (r, delta) in radius_and_delta(),
        shrink in 0.01f64..1.0,
    ) {
        prop_assert!(disc(r, delta * shrink).count >= disc(r, delta).count);
        prop_assert!(oracle_min_count(r, delta * shrink).unwrap() >= oracle_min_count(r, delta).unwrap());
    }

    #[test]
    fn helix_points_lie_on_cylinder(
        bore in 2.0f64..200.0,
        cutter_frac in 0.0f64..0.9,
        cx in -100.0f64..100.0,
        cy in -100.0f64..100.0,
        pitch in 0.2f64..5.0,
        revs in 1.0f64..4.0,
        tol_frac in 1e-4f64..0.2,
    ) {
        let cutter_diameter = 2.0 * bore * cutter_frac;
        let radius = bore - cutter_diameter / 2.0;
        let spec = HelixSpec {
            cutter_diameter,
            center_x: cx,
            center_y: cy,
            bore_radius: bore,
            pitch,
            bore_length: pitch * revs,
            tolerance: radius * tol_frac,
        };
        let pts = helix_points(&spec, FinalRevolution::Truncate).unwrap();
        let n = spec.discretization().unwrap().count as usize;
        prop_assert_eq!(pts.len(), spec.revolutions().unwrap() as usize * n);
        for p in &pts {
            let rr = (p.x - cx).hypot(p.y - cy);
            prop_assert!((rr - radius).abs() <= 1e-9 * radius.max(cx.abs()).max(cy.abs()));
        }
        prop_assert!(pts.windows(2).all(|w| w[1].z >= w[0].z));
    }

    #[test]
    fn helix_chords_within_tolerance(
        radius in 1.0f64..50.0,
        pitch in 0.5f64..5.0,
        tol_frac in 1e-3f64..0.2,
    ) {
        let spec = HelixSpec {
            cutter_diameter: 0.0,
            center_x: 0.0,
            center_y: 0.0,
            bore_radius: radius,
            pitch,
            bore_length: 2.0 * pitch,
            tolerance: radius * tol_frac,
        };
        let disc = spec.discretization().unwrap();
        // Exact-integer raw counts put a duplicate point on the seam.
        prop_assume!((disc.raw_count - disc.raw_count.round()).abs() > 1e-6);
        let pts = helix_points(&spec, FinalRevolution::Truncate).unwrap();
        let curve = Curve::Helix { center_x: 0.0, center_y: 0.0, radius, pitch };
        let report = measure_deviation(&pts, &curve, DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
        prop_assert!(report.max_deviation <= spec.tolerance * (1.0 + RELATIVE_EPSILON));
    }

    #[test]
    fn formatted_coordinates_round_trip(x in -1e6f64..1e6, decimals in 0u8..=6) {
        let text = format_coordinate(x, decimals);
        prop_assert!(!text.contains('e'));
        let back: f64 = text.parse().unwrap();
        let half = 0.5 * 10f64.powi(-(decimals as i32));
        prop_assert!((back - x).abs() <= half * (1.0 + 1e-9) + 1e-9 * x.abs());
    }

    #[test]
    fn rendered_program_round_trips(
        (r, delta) in radius_and_delta(),
        z in -50.0f64..50.0,
    ) {
        prop_assume!(r / delta < 2e4);
        let pts = circle_points(1.5, -2.5, r, z, delta).unwrap();
        let program = render_program(&pts, 1.5, -2.5, FormatPolicy::default()).unwrap();
        prop_assert_eq!(program.block_count(), pts.len() + 7);
        let text = program.render();
        prop_assert_eq!(text.lines().count(), pts.len() + 8);
        let parsed = parse_axis_moves(&text).unwrap();
        prop_assert_eq!(parsed.len(), pts.len());
        for (a, b) in parsed.iter().zip(&pts) {
            prop_assert!((a.x - b.x).abs() <= 0.0005 + 1e-12);
            prop_assert!((a.y - b.y).abs() <= 0.0005 + 1e-12);
            prop_assert!((a.z - b.z).abs() <= 0.0005 + 1e-12);
        }
    }
}

#[test]
fn ellipse_chords_within_tolerance() {
    for &(a, b) in &[(10.0, 6.0), (10.0, 9.9), (20.0, 2.0), (5.0, 5.0)] {
        let spec = EllipticalHelixSpec {
            semi_major: a,
            semi_minor: b,
            center_x: 1.0,
            center_y: -1.0,
            pitch: 2.0,
            bore_length: 4.0,
            tolerance: 0.1,
            cutter_diameter: 0.0,
        };
        let pts = elliptical_helix_points(&spec, FinalRevolution::Truncate).unwrap();
        let curve = Curve::EllipticalHelix {
            center_x: 1.0,
            center_y: -1.0,
            semi_x: a,
            semi_y: b,
            pitch: 2.0,
        };
        let report = measure_deviation(&pts, &curve, 256).unwrap();
        assert!(
            report.max_deviation <= 0.1 * (1.0 + RELATIVE_EPSILON),
            "{a} {b} {report:?}"
        );
    }
}
