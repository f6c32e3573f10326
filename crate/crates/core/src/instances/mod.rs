//! Seeded instance generators, standard constructions, and the line-based
//! text formats shared by the library and the CLI.

mod generate;
mod rng;
mod text;

pub use generate::{
    complete_graph, gen_genic, gen_gnp_digraph, gen_gnp_graph, gen_tournament, kneser_complement,
    line_graph, GenerateError,
};
pub use rng::SplitMix64;
pub use text::{
    parse_code, parse_cover, parse_digraph, parse_document, parse_instance, write_code, write_cover,
    write_digraph, write_instance, Document, ParseError,
};
