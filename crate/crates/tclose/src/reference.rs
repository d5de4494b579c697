//! Reference minimum-cost transport solver.
//!
//! An independent certification path for the distances in [`crate::emd`]:
//! the full transportation problem over the complete bipartite cost graph,
//! solved by successive shortest augmenting paths on an integer-scaled
//! instance. Deliberately size-capped; it exists to certify results on
//! small instances, not to compute them quickly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::distribution::Distribution;
use crate::Rational;

/// Largest domain size the solver accepts.
pub const MAX_DOMAIN: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum ReferenceError {
    #[error("distributions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("instance too large for the reference solver (m = {0}, cap = 12)")]
    InstanceTooLarge(usize),
}

/// A feasible flow: entry (i, j) is the mass moved from position i of p
/// to position j of q. Row sums equal p, column sums equal q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowMatrix {
    flows: Vec<Vec<Rational>>,
}

impl FlowMatrix {
    pub fn flows(&self) -> &[Vec<Rational>] {
        &self.flows
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.flows.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        let m = self.flows.len();
        (0..m)
            .map(|j| self.flows.iter().map(|row| &row[j]).sum())
            .collect()
    }

    /// Cost of this flow under the ground distance |i - j| / (m - 1).
    pub fn cost(&self) -> Rational {
        let m = self.flows.len();
        if m <= 1 {
            return Rational::zero();
        }
        let mut total = Rational::zero();
        for (i, row) in self.flows.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                total += f * Rational::new(i.abs_diff(j).into(), (m - 1).into());
            }
        }
        total
    }
}

/// Computes a certified minimum-cost flow transforming p into q, and its
/// cost. The instance is scaled to integers by the least common multiple
/// of all probability denominators, then solved by successive shortest
/// augmenting paths (Bellman-Ford over the residual graph).
pub fn mincost_transport(
    p: &Distribution,
    q: &Distribution,
) -> Result<(FlowMatrix, Rational), ReferenceError> {
    if p.len() != q.len() {
        return Err(ReferenceError::LengthMismatch(p.len(), q.len()));
    }
    let m = p.len();
    if m > MAX_DOMAIN {
        return Err(ReferenceError::InstanceTooLarge(m));
    }

    let mut scale = BigInt::from(1u8);
    for r in p.probs().iter().chain(q.probs()) {
        scale = scale.lcm(r.denom());
    }
    let to_units = |r: &Rational| -> i128 {
        ((r.numer() * &scale) / r.denom())
            .to_i128()
            .expect("scaled supply fits i128 at reference scale")
    };
    let supply: Vec<i128> = p.probs().iter().map(to_units).collect();
    let demand: Vec<i128> = q.probs().iter().map(to_units).collect();

    let flow_units = solve_transport(&supply, &demand, m);

    let flows: Vec<Vec<Rational>> = flow_units
        .iter()
        .map(|row| {
            row.iter()
                .map(|&f| Rational::new(BigInt::from(f), scale.clone()))
                .collect()
        })
        .collect();
    let matrix = FlowMatrix { flows };
    let cost = matrix.cost();
    Ok((matrix, cost))
}

/// Successive shortest paths on the integer transportation instance.
/// Node i (0..m) supplies `supply[i]`, node j demands `demand[j]`; the
/// residual graph has forward edges i -> j at cost |i - j| and backward
/// edges at -|i - j| wherever flow is positive.
fn solve_transport(supply: &[i128], demand: &[i128], m: usize) -> Vec<Vec<i128>> {
    let mut remaining_supply = supply.to_vec();
    let mut remaining_demand = demand.to_vec();
    let mut flow = vec![vec![0i128; m]; m];

    loop {
        if remaining_supply.iter().all(|&s| s == 0) {
            break;
        }

        // Bellman-Ford from all sources with remaining supply.
        // dist is indexed: 0..m sources, m..2m sinks.
        const UNREACHED: i64 = i64::MAX / 4;
        let n = 2 * m;
        let mut dist = vec![UNREACHED; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        for i in 0..m {
            if remaining_supply[i] > 0 {
                dist[i] = 0;
            }
        }
        for _ in 0..n {
            let mut changed = false;
            for i in 0..m {
                for j in 0..m {
                    let c = (i as i64 - j as i64).abs();
                    if dist[i] < UNREACHED && dist[i] + c < dist[m + j] {
                        dist[m + j] = dist[i] + c;
                        pred[m + j] = Some(i);
                        changed = true;
                    }
                    if flow[i][j] > 0 && dist[m + j] < UNREACHED && dist[m + j] - c < dist[i] {
                        dist[i] = dist[m + j] - c;
                        pred[i] = Some(m + j);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // Cheapest sink with unmet demand.
        let sink = (0..m)
            .filter(|&j| remaining_demand[j] > 0)
            .min_by_key(|&j| dist[m + j])
            .expect("supply remains, so demand must too");
        assert!(dist[m + sink] < UNREACHED, "augmenting path must exist");

        // Trace the path back to a source and find the bottleneck.
        let mut path = Vec::new();
        let mut node = m + sink;
        loop {
            let prev = match pred[node] {
                Some(p) => p,
                None => break,
            };
            path.push((prev, node));
            node = prev;
        }
        let source = node;

        let mut bottleneck = remaining_supply[source].min(remaining_demand[sink]);
        for &(a, b) in &path {
            if a >= m {
                // Backward edge sink a -> source b: limited by existing flow.
                bottleneck = bottleneck.min(flow[b][a - m]);
            }
        }
        assert!(bottleneck > 0);

        for &(a, b) in &path {
            if a < m {
                flow[a][b - m] += bottleneck;
            } else {
                flow[b][a - m] -= bottleneck;
            }
        }
        remaining_supply[source] -= bottleneck;
        remaining_demand[sink] -= bottleneck;
    }

    flow
}
