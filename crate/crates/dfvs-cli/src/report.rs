//! Key-value report of one solver invocation's search statistics.
//!
//! The field order is fixed and scripts may rely on it:
//! `nodes`, `leaves`, `max_depth`, `cut_size_histogram`,
//! `reduction_removals`, `leaf_bound`, `gamma_eps`, `wall_time_ms`.
//! The histogram renders as `size:count` pairs joined by commas, or `-` when
//! empty; `leaf_bound` is the exact decimal bound for the reported budget;
//! `gamma_eps` carries six decimals.

use dfvs::{gamma_epsilon, leaf_bound, SearchStats};
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct StatsReport {
    pub stats: SearchStats,
    /// Budget the invocation ran with; determines the reported leaf bound.
    pub k: usize,
    pub eps: f64,
    pub wall_time_ms: u128,
}

impl StatsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.stats.nodes);
        let _ = writeln!(out, "leaves {}", self.stats.leaves);
        let _ = writeln!(out, "max_depth {}", self.stats.max_depth);
        let histogram = if self.stats.cut_size_histogram.is_empty() {
            "-".to_string()
        } else {
            self.stats
                .cut_size_histogram
                .iter()
                .map(|(size, count)| format!("{size}:{count}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(out, "cut_size_histogram {histogram}");
        let _ = writeln!(out, "reduction_removals {}", self.stats.reduction_removals);
        let _ = writeln!(out, "leaf_bound {}", leaf_bound(self.k).bound);
        let gamma = gamma_epsilon(self.eps).expect("eps was range-checked at parse time");
        let _ = writeln!(out, "gamma_eps {gamma:.6}");
        let _ = writeln!(out, "wall_time_ms {}", self.wall_time_ms);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fields_in_pinned_order() {
        let mut stats = SearchStats::new();
        stats.nodes = 7;
        stats.leaves = 3;
        stats.max_depth = 2;
        stats.cut_size_histogram.insert(1, 4);
        stats.cut_size_histogram.insert(2, 1);
        stats.reduction_removals = 5;
        let report = StatsReport { stats, k: 2, eps: 0.25, wall_time_ms: 12 };
        let text = report.render();
        let keys: Vec<&str> = text
            .lines()
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        assert_eq!(
            keys,
            vec![
                "nodes",
                "leaves",
                "max_depth",
                "cut_size_histogram",
                "reduction_removals",
                "leaf_bound",
                "gamma_eps",
                "wall_time_ms"
            ]
        );
        assert!(text.contains("cut_size_histogram 1:4,2:1\n"));
        assert!(text.contains("leaf_bound 54\n"));
        assert!(text.contains("gamma_eps 1.754765\n"));
    }

    #[test]
    fn empty_histogram_renders_as_dash() {
        let report =
            StatsReport { stats: SearchStats::new(), k: 0, eps: 0.25, wall_time_ms: 0 };
        assert!(report.render().contains("cut_size_histogram -\n"));
        assert!(report.render().contains("leaf_bound 1\n"));
    }
}
