//! Command implementations, instance generators and benchmark grids behind
//! the `asymstream` binary.

pub mod bench;
pub mod commands;
pub mod gen;
pub mod report;

pub use bench::{run_bench, write_csv, BenchConfig, BenchRow, Suite};
pub use commands::{
    cmd_lcs, cmd_match, cmd_wildcard, Common, LcsMode, LcsOptions, OracleKind, StreamSource,
    WildcardOptions, DEFAULT_SEED,
};
pub use gen::{cmd_gen, GenKind, GenParams};
pub use report::{write_report, Answer, RunReport};
