//! Resource reports and the two-control cost model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ir::{Circuit, Digit};

/// Two-qudit gates per doubly-controlled gate under the cost model.
pub const TWO_QUDIT_PER_CC: usize = 6;
/// Single-qudit gates per doubly-controlled gate under the cost model.
pub const ONE_QUDIT_PER_CC: usize = 10;

/// Gates sharing an arity (targets + controls) and a dimension class (largest
/// capacity among the wires touched).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GateClass {
    pub arity: usize,
    pub dim: Digit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCount {
    pub arity: usize,
    pub dim: Digit,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub width: usize,
    pub depth: usize,
    /// Sorted by arity, then dimension class.
    pub gate_counts: Vec<GateCount>,
    pub max_dim_touched: Digit,
    pub ancilla_generated: Option<usize>,
    /// True once the cost model has been applied; `depth` then still
    /// describes the unexpanded circuit.
    pub expanded: bool,
}

impl ResourceReport {
    fn from_map(width: usize, depth: usize, counts: BTreeMap<GateClass, usize>, max_dim_touched: Digit) -> Self {
        ResourceReport {
            width,
            depth,
            gate_counts: counts
                .into_iter()
                .filter(|&(_, n)| n > 0)
                .map(|(k, count)| GateCount {
                    arity: k.arity,
                    dim: k.dim,
                    count,
                })
                .collect(),
            max_dim_touched,
            ancilla_generated: None,
            expanded: false,
        }
    }

    fn map(&self) -> BTreeMap<GateClass, usize> {
        self.gate_counts
            .iter()
            .map(|g| {
                (
                    GateClass {
                        arity: g.arity,
                        dim: g.dim,
                    },
                    g.count,
                )
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.gate_counts.iter().map(|g| g.count).sum()
    }

    pub fn count_arity(&self, arity: usize) -> usize {
        self.gate_counts.iter().filter(|g| g.arity == arity).map(|g| g.count).sum()
    }

    pub fn count(&self, arity: usize, dim: Digit) -> usize {
        self.gate_counts
            .iter()
            .find(|g| g.arity == arity && g.dim == dim)
            .map_or(0, |g| g.count)
    }

    pub fn with_ancilla_generated(mut self, n: usize) -> Self {
        self.ancilla_generated = Some(n);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn csv_header() -> &'static str {
        "width,depth,expanded,total,arity1,arity2,arity3,max_dim_touched,ancilla_generated"
    }

    /// One CSV row matching [`ResourceReport::csv_header`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.width,
            self.depth,
            self.expanded,
            self.total(),
            self.count_arity(1),
            self.count_arity(2),
            self.count_arity(3),
            self.max_dim_touched,
            self.ancilla_generated.map(|n| n.to_string()).unwrap_or_default()
        )
    }
}

pub fn report(c: &Circuit) -> ResourceReport {
    let mut counts = BTreeMap::new();
    let mut max_dim = 0;
    for g in c.gates() {
        let dim = g.wires().map(|w| c.dim(w)).max().unwrap_or(0);
        max_dim = max_dim.max(dim);
        *counts.entry(GateClass { arity: g.arity(), dim }).or_insert(0) += 1;
    }
    ResourceReport::from_map(c.width(), c.depth(), counts, max_dim)
}

/// Replace every doubly-controlled gate by its cost-model equivalent in the
/// counts. Depth is not re-derived.
pub fn expand_cost_model(r: &ResourceReport) -> ResourceReport {
    let mut counts = BTreeMap::new();
    let mut any = false;
    for (k, n) in r.map() {
        if k.arity == 3 {
            any = true;
            *counts.entry(GateClass { arity: 2, dim: k.dim }).or_insert(0) += TWO_QUDIT_PER_CC * n;
            *counts.entry(GateClass { arity: 1, dim: k.dim }).or_insert(0) += ONE_QUDIT_PER_CC * n;
        } else {
            *counts.entry(k).or_insert(0) += n;
        }
    }
    let mut out = ResourceReport::from_map(r.width, r.depth, counts, r.max_dim_touched);
    out.ancilla_generated = r.ancilla_generated;
    out.expanded = r.expanded || any;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compress::{compress_231_circuit, compress_241_circuit};
    use crate::ir::Gate;

    #[test]
    fn empty() {
        let c = Circuit::with_dims(&[2, 2]).unwrap();
        let r = report(&c);
        assert_eq!((r.total(), r.depth, r.max_dim_touched), (0, 0, 0));
        assert_eq!(expand_cost_model(&r), r);
    }

    #[test]
    fn two_four_one() {
        let r = report(&compress_241_circuit());
        assert_eq!(r.total(), 3);
        assert_eq!(r.count(2, 4), 3);
        assert_eq!(r.max_dim_touched, 4);
    }

    #[test]
    fn two_three_one_expanded() {
        let r = expand_cost_model(&report(&compress_231_circuit()));
        assert!(r.total() <= 22);
        assert!(r.count_arity(2) <= 12);
        assert!(r.count_arity(1) <= 10);
        assert!(r.expanded);
    }

    #[test]
    fn linear_expansion() {
        let mut c = Circuit::with_dims(&[3, 3, 3]).unwrap();
        c.push(Gate::ccx(0, 1, 2)).unwrap();
        c.push(Gate::ccx(1, 2, 0)).unwrap();
        c.push(Gate::cx(0, 1)).unwrap();
        let r = report(&c);
        assert_eq!(r.count(3, 3), 2);
        let e = expand_cost_model(&r);
        assert_eq!(e.total(), r.total() + 15 * 2);
        assert_eq!(e.count(2, 3), 13);
        assert_eq!(e.count(1, 3), 20);
        assert_eq!(e.depth, r.depth);
        assert_eq!(expand_cost_model(&e), e);
    }

    #[test]
    fn csv_columns() {
        let r = report(&compress_241_circuit());
        assert_eq!(
            ResourceReport::csv_header().split(',').count(),
            r.csv_row().split(',').count()
        );
    }
}
