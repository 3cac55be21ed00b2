use crate::error::Result;
use crate::geometry::point_set_diameter;
use crate::graph_analysis::component_labels;
use crate::knn_graph::{longest_edge, KnnTable};
use crate::point_process::{Point, PointSet};

use super::covers::{inner_region, Cover};
use super::events::witnesses_in;

/// Outcome of [`locality_check`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LocalityReport {
    /// Global longest edge at most `M sqrt(log n) / 16`.
    pub global_hypothesis: bool,
    /// Boxes whose own hypothesis held and were examined.
    pub boxes_checked: usize,
    /// Boxes skipped by either hypothesis.
    pub boxes_skipped: usize,
    /// Examined boxes in which the local event occurred.
    pub event_boxes: usize,
    /// Indices into the cover of boxes where the event occurred but the
    /// global graph has no component inside the box's central subsquare.
    pub violations: Vec<usize>,
}

/// Verifies that a local event in a box forces a small global component.
///
/// For each box `V` of `cover`, builds the k-NN graph on the points of
/// `ps_global` in `V`. When the global longest edge is at most
/// `M sqrt(log n) / 16`, the box graph's longest edge is at most
/// `M sqrt(log n) / 8`, and the box graph has a component wholly inside
/// `V/2`, the global k-NN graph must also have a component wholly inside
/// `V/2`; boxes where it does not are reported as violations.
pub fn locality_check(ps_global: &PointSet, k: usize, cover: &Cover) -> Result<LocalityReport> {
    let mut report = LocalityReport::default();
    let Some(first) = cover.boxes.first() else {
        report.global_hypothesis = true;
        return Ok(report);
    };
    let u = first.side();
    let table = KnnTable::build(ps_global, k)?;
    let global = table.graph(k);
    report.global_hypothesis = longest_edge(&global) <= u / 16.0;
    if !report.global_hypothesis {
        report.boxes_skipped = cover.len();
        return Ok(report);
    }
    let (labels, count) = component_labels(global.graph());
    let mut members: Vec<Vec<Point>> = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(ps_global.point(v));
    }

    for (b, spec) in cover.boxes.iter().enumerate() {
        let region = spec.region();
        let inside: Vec<usize> = (0..ps_global.len()).filter(|&i| region.contains(ps_global.point(i))).collect();
        let local = ps_global.subset(region, &inside)?;
        let local_table = KnnTable::build(&local, k)?;
        let local_graph = local_table.graph(k);
        if longest_edge(&local_graph) > spec.side() / 8.0 {
            report.boxes_skipped += 1;
            continue;
        }
        report.boxes_checked += 1;
        let half = spec.half_region();
        if witnesses_in(local_graph.graph(), local.points(), half).is_empty() {
            continue;
        }
        report.event_boxes += 1;
        if !members.iter().any(|pts| pts.iter().all(|&p| half.contains_strictly(p))) {
            report.violations.push(b);
        }
    }
    Ok(report)
}

/// A component of small diameter in a global sample.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallComponent {
    pub vertices: Vec<usize>,
    pub diameter: f64,
    /// Every point lies in the closed inner region `T_n`.
    pub inside_t_n: bool,
}

/// Components of the global k-NN graph with diameter below
/// `M sqrt(log n) / 16`, flagged by containment in `T_n`. The sample's
/// region is taken as `S_n`, so `n` is its area.
pub fn small_components_in_t_n(ps_global: &PointSet, k: usize, m: u32) -> Result<Vec<SmallComponent>> {
    let n = ps_global.region().area();
    let u = super::boxes::BoxSpec::new(n, m, Point::new(0.0, 0.0))?.side();
    let t_n = inner_region(n, m)?;
    let table = KnnTable::build(ps_global, k)?;
    let (labels, count) = component_labels(&table.undirected(k));
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(v);
    }
    let mut out = Vec::new();
    for vertices in members {
        let pts: Vec<Point> = vertices.iter().map(|&v| ps_global.point(v)).collect();
        let diameter = point_set_diameter(&pts);
        if diameter < u / 16.0 {
            let inside_t_n = t_n.is_some_and(|t| pts.iter().all(|&p| t.contains(p)));
            out.push(SmallComponent { vertices, diameter, inside_t_n });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_events::covers::region_cover;
    use crate::point_process::{sample_poisson, Region};

    #[test]
    fn sparse_samples_have_no_violations() {
        let n = 4096.0;
        let region = Region::square_of_area(n).unwrap();
        let cover = region_cover(region, n, 8).unwrap();
        for seed in 0..5 {
            let ps = sample_poisson(region, 1.0, seed).unwrap();
            let r = locality_check(&ps, 4, &cover).unwrap();
            assert!(r.violations.is_empty());
            assert_eq!(r.boxes_checked + r.boxes_skipped, cover.len());
        }
    }

    #[test]
    fn long_edge_skips_every_box() {
        let n = 4096.0;
        let region = Region::square_of_area(n).unwrap();
        let cover = region_cover(region, n, 8).unwrap();
        let pts = vec![Point::new(1.0, 1.0), Point::new(60.0, 60.0)];
        let ps = PointSet::from_points(region, pts, 0).unwrap();
        let r = locality_check(&ps, 1, &cover).unwrap();
        assert!(!r.global_hypothesis);
        assert_eq!(r.boxes_skipped, cover.len());
        assert_eq!(r.boxes_checked, 0);
    }

    fn planted(at: Point) -> PointSet {
        let n = 4096.0;
        let region = Region::square_of_area(n).unwrap();
        let base = sample_poisson(region, 1.0, 5).unwrap();
        let keep: Vec<usize> = (0..base.len()).filter(|&i| base.point(i).dist(at) > 6.0).collect();
        let mut pts: Vec<Point> = keep.iter().map(|&i| base.point(i)).collect();
        pts.extend((0..4).map(|i| Point::new(at.x + 0.01 * i as f64, at.y)));
        PointSet::from_points(region, pts, 0).unwrap()
    }

    fn cluster_flag(ps: &PointSet) -> bool {
        let small = small_components_in_t_n(ps, 3, 2).unwrap();
        let start = ps.len() - 4;
        let c = small.iter().find(|c| c.vertices.contains(&start)).expect("cluster is a component");
        assert_eq!(c.vertices, (start..start + 4).collect::<Vec<_>>());
        c.inside_t_n
    }

    #[test]
    fn planted_clusters_flagged_by_position() {
        assert!(cluster_flag(&planted(Point::new(32.0, 32.0))));
        assert!(!cluster_flag(&planted(Point::new(1.0, 32.0))));
    }

    #[test]
    fn connected_sample_lists_nothing() {
        let region = Region::square_of_area(1024.0).unwrap();
        let ps = sample_poisson(region, 1.0, 9).unwrap();
        assert!(small_components_in_t_n(&ps, 40, 2).unwrap().is_empty());
    }
}
