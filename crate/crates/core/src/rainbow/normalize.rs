//! The flowchart taking a rainbow with room for more arcs to a composable one.

use serde::Serialize;

use super::ops::{apply_block_op, BlockOp};
use super::{Block, Rainbow, RainbowError};

/// Loop passes allowed before giving up; a correct run needs at most five.
const MAX_PASSES: usize = 16;

/// One applied operation and the rainbow it produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedOp {
    pub op: BlockOp,
    pub block: Block,
    pub result: Rainbow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub result: Rainbow,
    pub ops_used: Vec<AppliedOp>,
}

/// Whether an arc fits just inside the innermost arc of the prefix `b`.
fn room_inside(r: &Rainbow, b: Block) -> bool {
    if b.is_empty() {
        return false;
    }
    let a = r.arcs()[b.end - 1];
    a.x + 1 < a.y - 1 && r.is_available(a.x + 1) && r.is_available(a.y - 1)
}

/// Step (1): composable near `B_l` or `B_r`.
fn locally_composable(r: &Rainbow) -> bool {
    let n = r.n();
    (r.is_available(0) && r.is_available(n)) || room_inside(r, r.left_block()) || room_inside(r, r.right_block())
}

/// Runs the flowchart. Every operation is counted, reflections included.
pub fn normalize_to_composable(r: &Rainbow) -> Result<Normalization, RainbowError> {
    let n = r.n();
    let limit = n.div_ceil(2) as usize;
    if r.len() >= limit {
        return Err(RainbowError::TooManyArcs { arcs: r.len(), limit });
    }
    let mut cur = r.clone();
    let mut ops: Vec<AppliedOp> = Vec::new();
    let mut apply = |cur: &mut Rainbow, op: BlockOp, block: Block| -> Result<(), RainbowError> {
        let next = apply_block_op(cur, op, block)?;
        ops.push(AppliedOp {
            op,
            block,
            result: next.clone(),
        });
        *cur = next;
        Ok(())
    };

    let mut passes = 0;
    'outer: loop {
        passes += 1;
        if passes > MAX_PASSES {
            return Err(RainbowError::DidNotConverge { steps: MAX_PASSES });
        }
        // (1)
        if locally_composable(&cur) {
            break;
        }
        // (2) and (3)
        loop {
            if cur.is_available(n) && cur.is_available(n - 1) {
                let b = cur.left_block();
                apply(&mut cur, BlockOp::TranslateRight, b)?;
                break 'outer;
            }
            if cur.outer_block() == cur.left_block() {
                break;
            }
            let whole = Block::new(0, cur.len());
            apply(&mut cur, BlockOp::Reflect, whole)?;
        }
        // (4)
        if cur.is_available(0) {
            let one_free = cur.is_available(1);
            let b = cur.right_block();
            apply(&mut cur, BlockOp::TranslateLeft, b)?;
            if one_free {
                break;
            }
            continue;
        }
        let left = cur.left_block();
        let right = cur.right_block();
        let inner_source = cur.arcs()[left.end - 1].x;
        // (5)
        if inner_source + 2 <= n && cur.is_available(inner_source + 2) {
            apply(&mut cur, BlockOp::TranslateLeft, Block::new(left.end, right.end))?;
            break;
        }
        // (6)
        if cur.is_available(n) {
            let b = cur.outer_block();
            apply(&mut cur, BlockOp::ContractLeft, b)?;
            break;
        }
        // (7)
        let outer = cur.outer_block();
        if 3 * outer.len() < n as usize + 3 {
            apply(&mut cur, BlockOp::ContractLeft, outer)?;
        } else {
            apply(&mut cur, BlockOp::ExpandLeft, Block::new(left.end, right.end))?;
        }
    }

    if !cur.is_composable() {
        return Err(RainbowError::NotComposable(cur));
    }
    Ok(Normalization {
        result: cur,
        ops_used: ops,
    })
}
