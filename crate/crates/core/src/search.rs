//! Depth-first backtracking over component assignments.

use crate::gray_core::GrayError;

/// A finite search problem: variables assigned in order, each from a candidate list
/// that may depend on earlier assignments.
pub(crate) trait Space {
    type State: Clone;

    fn vars(&self) -> usize;

    fn candidates(&self, var: usize, st: &Self::State) -> Result<Vec<u32>, GrayError>;

    fn assign(&self, var: usize, value: u32, st: &mut Self::State);

    /// Checks every constraint whose last variable is `var`.
    fn consistent(&self, var: usize, st: &Self::State) -> bool;
}

/// All complete consistent assignments, in lexicographic order of candidate lists.
pub(crate) fn search<S: Space>(space: &S, init: S::State, bound: u64) -> Result<Vec<S::State>, GrayError> {
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut st = init;
    descend(space, 0, &mut st, &mut out, &mut nodes, bound)?;
    Ok(out)
}

fn descend<S: Space>(
    space: &S,
    var: usize,
    st: &mut S::State,
    out: &mut Vec<S::State>,
    nodes: &mut u64,
    bound: u64,
) -> Result<(), GrayError> {
    if var == space.vars() {
        out.push(st.clone());
        return Ok(());
    }
    for v in space.candidates(var, st)? {
        *nodes += 1;
        if *nodes > bound {
            return Err(GrayError::Infeasible(bound));
        }
        space.assign(var, v, st);
        if space.consistent(var, st) {
            descend(space, var + 1, st, out, nodes, bound)?;
        }
    }
    Ok(())
}
