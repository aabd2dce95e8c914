use proptest::prelude::*;
use stpetersburg::fracdim::{box_count, box_dimension_estimate, graph_points, range_points, PointSet};
use stpetersburg::game::{y_path_approx, CoinParams, GainPath};

fn plane_points() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec(prop::array::uniform2(0.0f64..1.0), 1..400)
}

proptest! {
    #[test]
    fn plane_counts_refine_monotonically(points in plane_points(), j in 0u32..16) {
        let set = PointSet::Plane(points);
        let (coarse, fine) = (box_count(&set, j).unwrap(), box_count(&set, j + 1).unwrap());
        prop_assert!(coarse <= fine && fine <= 4 * coarse);
        prop_assert!(fine <= set.len() as u64);
    }

    #[test]
    fn line_counts_refine_monotonically(xs in prop::collection::vec(-4.0f64..4.0, 1..400), j in 0u32..20) {
        let set = PointSet::Line(xs);
        let (coarse, fine) = (box_count(&set, j).unwrap(), box_count(&set, j + 1).unwrap());
        prop_assert!(coarse <= fine && fine <= 2 * coarse);
        prop_assert!(fine <= set.len() as u64);
    }

    #[test]
    fn counts_ignore_order(mut points in plane_points(), j in 0u32..12) {
        let before = box_count(&PointSet::Plane(points.clone()), j).unwrap();
        points.reverse();
        prop_assert_eq!(box_count(&PointSet::Plane(points), j).unwrap(), before);
    }
}

fn y_path(seed: u64) -> stpetersburg::SampledPath {
    let gains = GainPath::simulate(1 << 20, CoinParams::fair(), seed).unwrap();
    y_path_approx(&gains, 20).unwrap()
}

#[test]
fn halving_the_scale_barely_moves_the_range_slope() {
    let report = box_dimension_estimate(&range_points(&y_path(31)), 3, 10).unwrap();
    let fine = report.fit_window(4, 10).unwrap().slope;
    let coarse = report.fit_window(3, 9).unwrap().slope;
    assert!((fine - coarse).abs() <= 0.05, "{fine} vs {coarse}");
}

#[test]
fn graph_slope_is_not_below_range_slope() {
    let path = y_path(32);
    let graph = box_dimension_estimate(&graph_points(&path), 4, 10).unwrap();
    let range = box_dimension_estimate(&range_points(&path), 4, 10).unwrap();
    let se = graph.slope_std_error.hypot(range.slope_std_error);
    assert!(graph.slope >= range.slope - 2.0 * se, "{} vs {}", graph.slope, range.slope);
}
