//! Orthogonal pairs of orders the field and product constructions miss,
//! stored as structured square records. Produced offline by
//! `examples/find_ols_literal.rs` and re-validated on every load.

use crate::error::Result;
use crate::format::parse_json;

use super::OlsBlock;

const LITERALS: &[(usize, &str)] = &[(10, include_str!("../../data/ols10.json"))];

pub fn bundled_orders() -> Vec<usize> {
    LITERALS.iter().map(|&(m, _)| m).collect()
}

/// The bundled square of order `m` restricted to `k` layers, if one exists.
pub(super) fn bundled(m: usize, k: usize) -> Result<Option<OlsBlock>> {
    let Some(&(_, text)) = LITERALS.iter().find(|&&(order, _)| order == m) else {
        return Ok(None);
    };
    let block = OlsBlock::new(parse_json(text)?)?;
    if k > block.layers() {
        return Ok(None);
    }
    block.truncate_layers(k).map(Some)
}
