//! Size-non-decreasing moves on single arcs and on blocks of arcs.

use serde::Serialize;

use super::{Arc, Block, Rainbow, RainbowError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcOp {
    /// `x -> y` to `x+1 -> y+1`, when `x + y < n`.
    TranslateRight,
    /// `x -> y` to `x-1 -> y-1`, when `x + y > n`.
    TranslateLeft,
    /// `x -> y` to `x -> y-1`, when `y - x > n - y`.
    ContractRight,
    /// `x -> y` to `x+1 -> y`, when `y - x > x`.
    ContractLeft,
    /// `x -> y` to `x -> y+1`, when `y - x < n - y`.
    ExpandRight,
    /// `x -> y` to `x-1 -> y`, when `y - x < x`.
    ExpandLeft,
}

impl ArcOp {
    pub const ALL: [ArcOp; 6] = [
        ArcOp::TranslateRight,
        ArcOp::TranslateLeft,
        ArcOp::ContractRight,
        ArcOp::ContractLeft,
        ArcOp::ExpandRight,
        ArcOp::ExpandLeft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArcOp::TranslateRight => "translate right",
            ArcOp::TranslateLeft => "translate left",
            ArcOp::ContractRight => "contract right",
            ArcOp::ContractLeft => "contract left",
            ArcOp::ExpandRight => "expand right",
            ArcOp::ExpandLeft => "expand left",
        }
    }

    /// `(dx, dy, condition holds, condition text)` for the arc `x -> y` on `{0..n}`.
    fn plan(self, a: Arc, n: u32) -> (i64, i64, bool, &'static str) {
        let (x, y, n) = (i64::from(a.x), i64::from(a.y), i64::from(n));
        match self {
            ArcOp::TranslateRight => (1, 1, x + y < n, "x + y < n"),
            ArcOp::TranslateLeft => (-1, -1, x + y > n, "x + y > n"),
            ArcOp::ContractRight => (0, -1, y - x > n - y, "y - x > n - y"),
            ArcOp::ContractLeft => (1, 0, y - x > x, "y - x > x"),
            ArcOp::ExpandRight => (0, 1, y - x < n - y, "y - x < n - y"),
            ArcOp::ExpandLeft => (-1, 0, y - x < x, "y - x < x"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockOp {
    /// Every arc `x -> y` to `n-y -> n-x`; the block must be the whole rainbow.
    Reflect,
    /// Shift a block that is full on the left one step right.
    TranslateRight,
    /// Shift a block that is full on the right one step left.
    TranslateLeft,
    /// Move every source of `B_O` one step right.
    ContractLeft,
    /// Move every source of `B_r \ B_l` one step left.
    ExpandLeft,
}

impl BlockOp {
    pub fn name(self) -> &'static str {
        match self {
            BlockOp::Reflect => "reflect",
            BlockOp::TranslateRight => "block translate right",
            BlockOp::TranslateLeft => "block translate left",
            BlockOp::ContractLeft => "block contract left",
            BlockOp::ExpandLeft => "block expand left",
        }
    }
}

fn shift(v: u32, d: i64, n: u32) -> Option<u32> {
    u32::try_from(i64::from(v) + d).ok().filter(|&c| c <= n)
}

/// Applies `op` to the arc at `index`.
pub fn apply_arc_op(r: &Rainbow, op: ArcOp, index: usize) -> Result<Rainbow, RainbowError> {
    let a = *r.arcs().get(index).ok_or(RainbowError::BadBlock {
        start: index,
        end: index + 1,
        len: r.len(),
    })?;
    let (dx, dy, holds, condition) = op.plan(a, r.n());
    if !holds {
        return Err(RainbowError::ConditionFailed { op: op.name(), condition });
    }
    let out_of_range = || RainbowError::ArcOutOfRange {
        x: (i64::from(a.x) + dx).max(0) as u32,
        y: (i64::from(a.y) + dy).max(0) as u32,
        n: r.n(),
    };
    let x = shift(a.x, dx, r.n()).ok_or_else(out_of_range)?;
    let y = shift(a.y, dy, r.n()).ok_or_else(out_of_range)?;
    for c in [x, y] {
        if c != a.x && c != a.y && !r.is_available(c) {
            return Err(RainbowError::EndpointOccupied { class: c });
        }
    }
    let mut arcs = r.arcs().to_vec();
    arcs[index] = Arc::new(x, y);
    r.with_arcs(arcs)
}

fn check_block(r: &Rainbow, b: Block) -> Result<(), RainbowError> {
    if b.is_empty() {
        return Err(RainbowError::NoBlock);
    }
    if b.end > r.len() {
        return Err(RainbowError::BadBlock {
            start: b.start,
            end: b.end,
            len: r.len(),
        });
    }
    Ok(())
}

fn is_full_on_left(arcs: &[Arc]) -> bool {
    arcs.iter().enumerate().all(|(i, a)| a.x == arcs[0].x + i as u32)
}

fn is_full_on_right(arcs: &[Arc]) -> bool {
    arcs.iter().enumerate().all(|(i, a)| a.y + i as u32 == arcs[0].y)
}

/// Moves every arc of `b` by `(dx, dy)`; new endpoints must be free or already inside `b`.
fn move_block(r: &Rainbow, b: Block, dx: i64, dy: i64) -> Result<Rainbow, RainbowError> {
    let inside: Vec<u32> = r.arcs()[b.start..b.end].iter().flat_map(|a| [a.x, a.y]).collect();
    let mut arcs = r.arcs().to_vec();
    for a in &mut arcs[b.start..b.end] {
        let out_of_range = || RainbowError::ArcOutOfRange {
            x: (i64::from(a.x) + dx).max(0) as u32,
            y: (i64::from(a.y) + dy).max(0) as u32,
            n: r.n(),
        };
        let x = shift(a.x, dx, r.n()).ok_or_else(out_of_range)?;
        let y = shift(a.y, dy, r.n()).ok_or_else(out_of_range)?;
        for c in [x, y] {
            if !inside.contains(&c) && !r.is_available(c) {
                return Err(RainbowError::EndpointOccupied { class: c });
            }
        }
        *a = Arc::new(x, y);
    }
    r.with_arcs(arcs)
}

/// Applies a block operation to `block`.
pub fn apply_block_op(r: &Rainbow, op: BlockOp, block: Block) -> Result<Rainbow, RainbowError> {
    check_block(r, block)?;
    let fail = |condition| Err(RainbowError::ConditionFailed { op: op.name(), condition });
    let arcs = &r.arcs()[block.start..block.end];
    let first = arcs[0];
    let n = r.n();
    match op {
        BlockOp::Reflect => {
            if block != Block::new(0, r.len()) {
                return fail("the block to be the whole rainbow");
            }
            Ok(r.reflected())
        }
        BlockOp::TranslateRight => {
            if !is_full_on_left(arcs) {
                return fail("a block full on the left");
            }
            if first.x + first.y >= n {
                return fail("x_I + y_I < n");
            }
            move_block(r, block, 1, 1)
        }
        BlockOp::TranslateLeft => {
            if !is_full_on_right(arcs) {
                return fail("a block full on the right");
            }
            if first.x + first.y <= n {
                return fail("x_I + y_I > n");
            }
            move_block(r, block, -1, -1)
        }
        BlockOp::ContractLeft => {
            if block != r.outer_block() {
                return fail("the block to be B_O");
            }
            let inner = block.end as u32 - 1;
            let last = arcs[arcs.len() - 1];
            if first.x != 0 {
                return fail("outer arc starting at 0");
            }
            if !r.is_available(last.x + 1) {
                return fail("x_I + 1 available");
            }
            let allowed = first.y + 1 == n || (first.y == n && 3 * inner < n);
            if !allowed {
                return fail("outer arc 0 -> n-1, or outer arc 0 -> n with I < n/3");
            }
            move_block(r, block, 1, 0)
        }
        BlockOp::ExpandLeft => {
            let left = r.left_block();
            let right = r.right_block();
            if block != Block::new(left.end, right.end) {
                return fail("the block to be B_r minus B_l");
            }
            let outer = r.arcs()[0];
            if (outer.x, outer.y) != (0, n) {
                return fail("outer arc 0 -> n");
            }
            if r.outer_block() != left {
                return fail("B_O = B_l");
            }
            let inner = left.end as u32 - 1;
            if 3 * inner < n {
                return fail("I >= n/3");
            }
            move_block(r, block, -1, 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb(n: u32, pairs: &[(u32, u32)]) -> Rainbow {
        Rainbow::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn single_arc_ops() {
        let r = rb(8, &[(0, 7)]);
        let t = apply_arc_op(&r, ArcOp::TranslateRight, 0).unwrap();
        assert_eq!(t, rb(8, &[(1, 8)]));
        assert!(t.size() >= r.size());

        let sym = rb(8, &[(2, 6)]);
        for op in [ArcOp::TranslateRight, ArcOp::TranslateLeft] {
            assert!(matches!(
                apply_arc_op(&sym, op, 0),
                Err(RainbowError::ConditionFailed { .. })
            ));
        }

        // y - x > x with x + 1 free: size grows by (y - x) / (x + 1)
        let r = rb(9, &[(1, 8)]);
        let c = apply_arc_op(&r, ArcOp::ContractLeft, 0).unwrap();
        assert_eq!(c, rb(9, &[(2, 8)]));
        assert_eq!(c.size() * 2u32, r.size() * 7u32);

        let blocked = rb(9, &[(1, 8), (2, 7)]);
        assert_eq!(
            apply_arc_op(&blocked, ArcOp::ContractLeft, 0),
            Err(RainbowError::EndpointOccupied { class: 2 })
        );
    }

    #[test]
    fn block_ops() {
        assert_eq!(
            apply_block_op(&Rainbow::empty(3), BlockOp::Reflect, Block::new(0, 0)),
            Err(RainbowError::NoBlock)
        );
        let r = rb(9, &[(0, 8), (1, 7), (3, 6), (4, 5)]);
        let refl = apply_block_op(&r, BlockOp::Reflect, Block::new(0, 4)).unwrap();
        assert_eq!(refl, rb(9, &[(1, 9), (2, 8), (3, 6), (4, 5)]));
        assert_eq!(refl.size(), r.size());

        let c = apply_block_op(&r, BlockOp::ContractLeft, r.outer_block()).unwrap();
        assert_eq!(c, rb(9, &[(1, 8), (2, 7), (3, 6), (4, 5)]));
        assert!(c.size() >= r.size());

        let t = apply_block_op(&rb(9, &[(0, 7), (1, 5), (3, 4)]), BlockOp::TranslateRight, Block::new(0, 2)).unwrap();
        assert_eq!(t, rb(9, &[(1, 8), (2, 6), (3, 4)]));
        assert!(matches!(
            apply_block_op(&r, BlockOp::TranslateRight, Block::new(0, 3)),
            Err(RainbowError::ConditionFailed { .. })
        ));
    }
}
