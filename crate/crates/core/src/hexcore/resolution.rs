//! Power-of-two resolution changes.

use super::{Alu, Exact, HexCoord, HexError};

fn scale_bits(k: i64) -> Result<u32, HexError> {
    if k < 2 || (k & (k - 1)) != 0 {
        return Err(HexError::InvalidScale(k));
    }
    Ok(k.trailing_zeros())
}

/// Index of the coarse tile (cells `k` times larger) containing `p`.
///
/// Each component is floor-divided by `k` with a shift; the remainders then
/// sum to `n * k` with `n` in {0, 1, 2}, and the `n` quotients with the
/// largest remainders are incremented (ties go to the earlier of q, r, s).
/// Every tile has exactly `k^2` cells.
pub fn coarsen_with(p: HexCoord, k: i64, alu: &mut impl Alu) -> Result<HexCoord, HexError> {
    let bits = scale_bits(k)?;
    let comps = p.components();
    let mut quot = [0i64; 3];
    let mut rem = [0i64; 3];
    for axis in 0..3 {
        quot[axis] = alu.shr(comps[axis], bits);
        rem[axis] = alu.mask(comps[axis], bits);
    }
    let partial = alu.add(rem[0], rem[1]);
    let total = alu.add(partial, rem[2]);
    let owed = alu.shr(total, bits) as usize;

    let mut order = [0usize, 1, 2];
    // stable: equal remainders keep q, r, s order
    order.sort_by(|&a, &b| rem[b].cmp(&rem[a]));
    for &axis in order.iter().take(owed) {
        quot[axis] = alu.add(quot[axis], 1);
    }
    Ok(HexCoord::from_parts_unchecked(quot[0], quot[1], quot[2]))
}

pub fn coarsen(p: HexCoord, k: i64) -> Result<HexCoord, HexError> {
    coarsen_with(p, k, &mut Exact)
}

/// Componentwise multiplication by `k` (a left shift).
pub fn refine_with(p: HexCoord, k: i64, alu: &mut impl Alu) -> Result<HexCoord, HexError> {
    let bits = scale_bits(k)?;
    let [q, r, s] = p.components();
    Ok(HexCoord::from_parts_unchecked(
        alu.shl(q, bits),
        alu.shl(r, bits),
        alu.shl(s, bits),
    ))
}

pub fn refine(p: HexCoord, k: i64) -> Result<HexCoord, HexError> {
    refine_with(p, k, &mut Exact)
}
