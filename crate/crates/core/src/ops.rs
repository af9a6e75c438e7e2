//! Registry of the public operations, grouped by module.
//!
//! Front ends use this list to prove that every operation is reachable; the
//! CLI's coverage test walks it against its own dispatch table.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Operation {
    pub module: &'static str,
    pub name: &'static str,
}

const fn op(module: &'static str, name: &'static str) -> Operation {
    Operation { module, name }
}

pub const OPERATIONS: &[Operation] = &[
    op("free_lie", "lyndon_basis"),
    op("free_lie", "witt_dimension"),
    op("free_lie", "bracket"),
    op("free_lie", "weight_component"),
    op("free_lie", "quasi_norm"),
    op("free_lie", "central_quotient"),
    op("bch_group", "bch_product"),
    op("bch_group", "bch_inverse"),
    op("bch_group", "eval_word"),
    op("bch_group", "word_to_lie"),
    op("bch_group", "lie_to_word"),
    op("bch_group", "word_ball"),
    op("rep_theory", "weight_multiplicity"),
    op("rep_theory", "kostka"),
    op("rep_theory", "weyl_dim"),
    op("rep_theory", "decompose"),
    op("rep_theory", "major_index"),
    op("rep_theory", "kw_multiplicity"),
    op("rep_theory", "klyachko_occurs"),
    op("rep_theory", "is_multiplicity_free"),
    op("rep_theory", "glk_action"),
    op("rep_theory", "highest_weight_vectors"),
    op("rep_theory", "metabelian_layer_dims"),
    op("dioph_lab", "delta_gamma"),
    op("dioph_lab", "bass_guivarch_exponent"),
    op("dioph_lab", "liouville_submodule"),
    op("dioph_lab", "liouville_decay"),
    op("dioph_lab", "chebyshev_t"),
    op("dioph_lab", "remez_check"),
    op("dioph_lab", "fit_beta"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_are_unique() {
        let names: HashSet<_> = OPERATIONS.iter().map(|o| o.name).collect();
        assert_eq!(names.len(), OPERATIONS.len());
    }
}
