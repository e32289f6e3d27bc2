use super::{Label, PacketHeader, SchemeArtifacts, SchemeKind, TableSet};
use crate::error::{Error, Result};
use crate::graph::{bfs, DistanceBlock, Graph, NodeId, Port, UNREACHABLE};
use crate::hierarchical;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Deliver,
    Forward(Port),
}

/// Hop distances from every node to the packet's destination. Only the
/// implicit shortest-path tables of the trivial scheme consult them; callers
/// routing many packets to one destination pass a precomputed row.
#[derive(Clone, Copy, Debug)]
pub enum DestinationDistances<'a> {
    Unknown,
    Row(&'a [u32]),
    Block(&'a DistanceBlock, usize),
}

impl DestinationDistances<'_> {
    #[inline]
    fn get(&self, v: NodeId) -> Option<u32> {
        match *self {
            DestinationDistances::Unknown => None,
            DestinationDistances::Row(r) => Some(r[v as usize]),
            DestinationDistances::Block(b, lane) => Some(b.dist(lane, v)),
        }
    }
}

/// One forwarding decision at `current` for a packet carrying `header`.
///
/// Landmark schemes apply, in order: deliver when `current` is the
/// destination; use the table entry for the destination if present; at the
/// destination's landmark, leave through the label's egress port; otherwise
/// head for the destination's landmark, which every table holds.
pub fn forward(
    artifacts: &SchemeArtifacts,
    g: &Graph,
    current: NodeId,
    header: &PacketHeader,
) -> Result<Decision> {
    decide(artifacts, g, current, header, DestinationDistances::Unknown)
}

pub(crate) fn decide(
    art: &SchemeArtifacts,
    g: &Graph,
    current: NodeId,
    header: &PacketHeader,
    dists: DestinationDistances<'_>,
) -> Result<Decision> {
    let dst = header.destination().node();
    if current == dst {
        return Ok(Decision::Deliver);
    }
    match art.kind {
        SchemeKind::Trivial => shortest_path_port(art, g, current, dst, dists).map(Decision::Forward),
        SchemeKind::Cowen | SchemeKind::Tz => {
            let Label::Landmark(label) = *header.destination() else {
                return Err(malformed("landmark scheme packet without a landmark label"));
            };
            let table = art
                .explicit_table(current)
                .ok_or_else(|| malformed("landmark scheme without explicit tables"))?;
            if let Some(p) = table.get(dst) {
                return Ok(Decision::Forward(p));
            }
            if current == label.landmark {
                return label
                    .landmark_egress
                    .map(Decision::Forward)
                    .ok_or_else(|| malformed("non-landmark label without egress port"));
            }
            table
                .get(label.landmark)
                .map(Decision::Forward)
                .ok_or_else(|| malformed(&format!("node {current} has no entry for landmark {}", label.landmark)))
        }
        SchemeKind::Hierarchical => hierarchical::decide(art, current, header).map(Decision::Forward),
    }
}

fn shortest_path_port(
    art: &SchemeArtifacts,
    g: &Graph,
    current: NodeId,
    dst: NodeId,
    dists: DestinationDistances<'_>,
) -> Result<Port> {
    debug_assert!(matches!(art.tables, TableSet::ShortestPath));
    if let Some(p) = g.port_to(current, dst) {
        return Ok(p);
    }
    let pick = |dist: &dyn Fn(NodeId) -> u32| -> Option<Port> {
        let d = dist(current);
        if d == 0 || d == UNREACHABLE {
            return None;
        }
        g.neighbors(current)
            .iter()
            .position(|&x| dist(x) == d - 1)
            .map(|p| p as Port)
    };
    let port = match dists {
        DestinationDistances::Unknown => {
            let tree = bfs(g, dst);
            pick(&|v| tree.distances()[v as usize])
        }
        known => pick(&|v| known.get(v).unwrap_or(UNREACHABLE)),
    };
    port.ok_or_else(|| malformed(&format!("no shortest-path port from {current} to {dst}")))
}

fn malformed(msg: &str) -> Error {
    Error::MalformedArtifacts(msg.to_string())
}

/// Forwards hop by hop from `src` until delivery at `dst` and returns the
/// node sequence including both endpoints.
pub fn route(art: &SchemeArtifacts, g: &Graph, src: NodeId, dst: NodeId) -> Result<Vec<NodeId>> {
    art.check_graph(g)?;
    g.check_node(src as u64)?;
    g.check_node(dst as u64)?;
    let row;
    let dists = if art.kind == SchemeKind::Trivial && src != dst {
        row = bfs(g, dst);
        DestinationDistances::Row(row.distances())
    } else {
        DestinationDistances::Unknown
    };
    let mut path = vec![src];
    walk(art, g, src, dst, dists, |v| path.push(v))?;
    Ok(path)
}

/// Number of hops of the routed path from `src` to `dst`.
pub fn route_len(
    art: &SchemeArtifacts,
    g: &Graph,
    src: NodeId,
    dst: NodeId,
    dists: DestinationDistances<'_>,
) -> Result<u32> {
    let mut hops = 0u32;
    walk(art, g, src, dst, dists, |_| hops += 1)?;
    Ok(hops)
}

fn walk(
    art: &SchemeArtifacts,
    g: &Graph,
    src: NodeId,
    dst: NodeId,
    dists: DestinationDistances<'_>,
    mut visit: impl FnMut(NodeId),
) -> Result<()> {
    let header = art.header_for(dst);
    let guard = 2 * art.node_count().max(1);
    let mut current = src;
    let mut trail = Vec::new();
    for _ in 0..guard {
        match decide(art, g, current, &header, dists)? {
            Decision::Deliver => return Ok(()),
            Decision::Forward(p) => {
                let next = g
                    .neighbor_at(current, p)
                    .ok_or_else(|| malformed(&format!("port {p} invalid at node {current}")))?;
                trail.push(current);
                visit(next);
                current = next;
            }
        }
    }
    trail.push(current);
    Err(Error::RoutingLoop {
        src,
        dst,
        cycle: first_cycle(&trail),
    })
}

fn first_cycle(trail: &[NodeId]) -> Vec<NodeId> {
    let mut seen = std::collections::HashMap::new();
    for (i, &v) in trail.iter().enumerate() {
        if let Some(&j) = seen.get(&v) {
            return trail[j..i].to_vec();
        }
        seen.insert(v, i);
    }
    trail.to_vec()
}
