use rayon::prelude::*;

use crate::error::Result;
use crate::graph::Coloring;

/// Runs independent branches in parallel and returns the outcome of the
/// first branch, in input order, that is satisfiable or fails.
pub(crate) fn first_sat<T: Send>(
    branches: Vec<T>,
    run: impl Fn(T) -> Result<Option<Coloring>> + Sync + Send,
) -> Result<Option<Coloring>> {
    branches
        .into_par_iter()
        .find_map_first(|b| run(b).transpose())
        .transpose()
}
