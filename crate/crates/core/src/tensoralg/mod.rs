//! Super tensor calculus on mixed powers of `V` and `V*`.
//!
//! Every sign in this module comes from one rule: exchanging two adjacent
//! factors of parities `p` and `q` costs `(-1)^{pq}`. Permutations, partial
//! supertraces and the module action are all built on that rule.

mod coords;
mod projectors;
mod tensor;

pub use coords::{from_g_coords, g_pair_coords, to_g_coords, GCoords};
pub use projectors::{
    antisym_upper, bracket_map, cartan_part, cartan_product, chi, decompose_sym, is_g_sym, phi,
    phi_delta_closed_form, phi_with, project_offcartan, psi, sym_upper, PhiConstants, SymParts,
};
pub use tensor::{
    act, antisymmetrize_pairs, contract_str, kappa, permute_signed, symmetrize_pairs, SlotKind,
    SlotPermutation, SuperTensor, TensorJson,
};

#[cfg(test)]
mod tests;
