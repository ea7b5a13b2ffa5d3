//! Path eccentricity of graphs: exact oracles, class-specific dominating-path
//! algorithms, lower-bound certificates, the extremal graph families and the
//! text formats used to exchange instances.

use thiserror::Error;

pub mod bounds;
pub mod exact;
pub mod families;
mod flow;
pub mod graph;
pub mod io;
pub mod par;
pub mod report;
pub mod structured;

/// Any error the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Exact(#[from] exact::ExactError),
    #[error(transparent)]
    Order(#[from] structured::OrderError),
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
    #[error(transparent)]
    Family(#[from] families::FamilyError),
    #[error(transparent)]
    Parse(#[from] io::ParseError),
}

impl Error {
    /// Process exit status: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Family(e) if e.is_usage() => 2,
            _ => 1,
        }
    }
}
