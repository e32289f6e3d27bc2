//! Graph sources: seeded scale-free generators, AS-relationship snapshots
//! and plain edge lists.

mod asrel;
mod edgelist;
mod gen;

pub use asrel::{asrel_to_graph, parse_asrel, parse_asrel_reader, serialize_asrel, AsRelRecord, Relationship};
pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use gen::{gen_powerlaw_config, gen_preferential, generate, GenConfig, Model};
