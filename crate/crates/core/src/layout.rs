//! Physical qubit placement and CX routing over restricted connectivity.
//!
//! A topology is an undirected connected graph over physical qubits. All
//! shortest-path data is precomputed with Floyd-Warshall; the next-hop
//! choice is the lowest-indexed neighbor that stays on a shortest path, so
//! routing is fully deterministic. A CX between non-adjacent qubits expands
//! recursively: with w the next hop from control c toward target t,
//!
//!   cx(c, t) = cx(w, t) cx(c, w) cx(w, t) cx(c, w)   (execution order)
//!
//! which uses only edge-adjacent gates, restores every intermediate qubit,
//! and costs 3 * 2^(d-1) - 2 gates for distance d.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Undirected connected graph over physical qubits with shortest-path data.
#[derive(Debug, Clone)]
pub struct Topology {
    n_qubits: usize,
    edges: Vec<(usize, usize)>,
    adjacent: Vec<bool>,
    dist: Vec<usize>,
    next_hop: Vec<usize>,
}

const UNREACHABLE: usize = usize::MAX / 2;

impl Topology {
    /// Builds a topology from undirected edges. Endpoints must be in range,
    /// self-loops are rejected, duplicates collapse, and the graph must be
    /// connected.
    pub fn new(n_qubits: usize, raw_edges: &[(usize, usize)]) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Topology("topology needs at least one qubit".into()));
        }
        let mut edges = Vec::new();
        let mut adjacent = vec![false; n_qubits * n_qubits];
        for &(a, b) in raw_edges {
            if a >= n_qubits || b >= n_qubits {
                return Err(Error::Topology(format!(
                    "edge ({a}, {b}) references a qubit outside 0..{n_qubits}"
                )));
            }
            if a == b {
                return Err(Error::Topology(format!("self-loop on qubit {a}")));
            }
            if !adjacent[a * n_qubits + b] {
                adjacent[a * n_qubits + b] = true;
                adjacent[b * n_qubits + a] = true;
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();

        let mut dist = vec![UNREACHABLE; n_qubits * n_qubits];
        for i in 0..n_qubits {
            dist[i * n_qubits + i] = 0;
        }
        for &(a, b) in &edges {
            dist[a * n_qubits + b] = 1;
            dist[b * n_qubits + a] = 1;
        }
        for k in 0..n_qubits {
            for i in 0..n_qubits {
                let dik = dist[i * n_qubits + k];
                if dik >= UNREACHABLE {
                    continue;
                }
                for j in 0..n_qubits {
                    let through = dik + dist[k * n_qubits + j];
                    if through < dist[i * n_qubits + j] {
                        dist[i * n_qubits + j] = through;
                    }
                }
            }
        }
        if dist.iter().any(|&d| d >= UNREACHABLE) {
            return Err(Error::Topology("topology graph is not connected".into()));
        }

        // Lowest-indexed neighbor that makes progress toward the target.
        let mut next_hop = vec![0usize; n_qubits * n_qubits];
        for i in 0..n_qubits {
            for j in 0..n_qubits {
                if i == j {
                    next_hop[i * n_qubits + j] = i;
                    continue;
                }
                let want = dist[i * n_qubits + j] - 1;
                let hop = (0..n_qubits)
                    .find(|&w| adjacent[i * n_qubits + w] && dist[w * n_qubits + j] == want)
                    .expect("connected graph always has a next hop");
                next_hop[i * n_qubits + j] = hop;
            }
        }

        Ok(Topology {
            n_qubits,
            edges,
            adjacent,
            dist,
            next_hop,
        })
    }

    /// Fully connected topology (every pair adjacent), the implicit layout
    /// when no connectivity constraint is given.
    pub fn complete(n_qubits: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n_qubits {
            for b in a + 1..n_qubits {
                edges.push((a, b));
            }
        }
        if n_qubits == 1 {
            return Topology::new(1, &[]);
        }
        Topology::new(n_qubits, &edges)
    }

    /// Linear chain 0-1-...-(n-1).
    pub fn line(n_qubits: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..n_qubits).map(|i| (i - 1, i)).collect();
        Topology::new(n_qubits, &edges)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent[a * self.n_qubits + b]
    }

    /// Shortest-path distance in edges.
    pub fn dist(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.n_qubits + b]
    }

    /// First step on the chosen shortest path from `a` to `b`.
    pub fn next_hop(&self, a: usize, b: usize) -> usize {
        self.next_hop[a * self.n_qubits + b]
    }
}

/// Assignment of logical circuit qubits to physical topology qubits.
#[derive(Debug, Clone)]
pub struct LayoutMap {
    logical_to_physical: Vec<usize>,
}

impl LayoutMap {
    /// `logical_to_physical[q]` is the physical home of logical qubit `q`.
    /// Entries must be distinct.
    pub fn new(logical_to_physical: Vec<usize>) -> Result<Self> {
        let mut seen = logical_to_physical.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Mapping(
                "two logical qubits share a physical qubit".into(),
            ));
        }
        Ok(LayoutMap {
            logical_to_physical,
        })
    }

    pub fn identity(n_qubits: usize) -> Self {
        LayoutMap {
            logical_to_physical: (0..n_qubits).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.logical_to_physical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logical_to_physical.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.logical_to_physical[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.logical_to_physical
    }
}

/// Expands one CX between physical qubits into edge-adjacent CX gates.
pub fn route_cnot(topology: &Topology, control: usize, target: usize) -> Result<Vec<Gate>> {
    let n = topology.n_qubits();
    if control >= n || target >= n {
        return Err(Error::QubitOutOfRange {
            index: control.max(target),
            n_qubits: n,
        });
    }
    if control == target {
        return Err(Error::InvalidGate("cx control equals target".into()));
    }
    let mut out = Vec::new();
    route_cnot_into(topology, control, target, &mut out);
    Ok(out)
}

fn route_cnot_into(topology: &Topology, control: usize, target: usize, out: &mut Vec<Gate>) {
    if topology.is_adjacent(control, target) {
        out.push(Gate::cx(control, target));
        return;
    }
    let hop = topology.next_hop(control, target);
    route_cnot_into(topology, hop, target, out);
    out.push(Gate::cx(control, hop));
    route_cnot_into(topology, hop, target, out);
    out.push(Gate::cx(control, hop));
}

/// Rewrites a logical circuit onto a topology: qubits move to their physical
/// homes and every non-adjacent CX is expanded through `route_cnot`. The
/// result uses the full physical register.
pub fn route_circuit(
    circuit: &Circuit,
    topology: &Topology,
    layout: &LayoutMap,
) -> Result<Circuit> {
    if layout.len() != circuit.n_qubits {
        return Err(Error::Mapping(format!(
            "layout places {} qubits but the circuit has {}",
            layout.len(),
            circuit.n_qubits
        )));
    }
    if circuit.n_qubits > topology.n_qubits() {
        return Err(Error::Topology(format!(
            "circuit needs {} qubits but the topology has {}",
            circuit.n_qubits,
            topology.n_qubits()
        )));
    }
    if let Some(&p) = layout.as_slice().iter().find(|&&p| p >= topology.n_qubits()) {
        return Err(Error::Mapping(format!(
            "layout places a qubit on {p}, outside the topology"
        )));
    }
    let mut routed = Circuit::new(topology.n_qubits(), circuit.n_clbits);
    for gate in &circuit.gates {
        match gate {
            Gate::U3 {
                qubit,
                theta,
                phi,
                lambda,
            } => routed.push(Gate::u3(layout.physical(*qubit), *theta, *phi, *lambda))?,
            Gate::Cx { control, target } => {
                let c = layout.physical(*control);
                let t = layout.physical(*target);
                for g in route_cnot(topology, c, t)? {
                    routed.push(g)?;
                }
            }
            Gate::Measure { qubit, clbit } => routed.push(Gate::Measure {
                qubit: layout.physical(*qubit),
                clbit: *clbit,
            })?,
            Gate::Barrier { qubits } => {
                let mapped: Vec<usize> = qubits.iter().map(|&q| layout.physical(q)).collect();
                routed.push(Gate::Barrier { qubits: mapped })?;
            }
        }
    }
    Ok(routed)
}
