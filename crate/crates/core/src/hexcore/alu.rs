//! Arithmetic hooks for the lattice routines.
//!
//! Every routine in [`crate::hexcore`] that touches coordinate-sized values
//! goes through an [`Alu`]. [`Exact`] is a zero-sized unit whose hooks
//! compile away; the oracle's `OpCounter` plugs into the same code path to
//! tally operations and track bit growth.

/// Instruction class of a recorded operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpClass {
    /// Addition or subtraction, including the mod-6 wedge index adder.
    Add,
    Mul,
    Div,
    /// Logical/arithmetic shifts and bit masks.
    Shift,
    /// Sign flips and absolute values (sign decoding).
    Sign,
    /// A value that enters a computation without being produced by it.
    Observe,
    /// One orientation predicate (angle comparison).
    Predicate,
}

/// Integer arithmetic with an observation hook.
pub trait Alu {
    /// Called once per operation with the produced value.
    #[inline]
    fn record(&mut self, class: OpClass, result: i64) {
        let _ = (class, result);
    }

    #[inline]
    fn observe(&mut self, v: i64) -> i64 {
        self.record(OpClass::Observe, v);
        v
    }

    #[inline]
    fn add(&mut self, a: i64, b: i64) -> i64 {
        let v = a + b;
        self.record(OpClass::Add, v);
        v
    }

    #[inline]
    fn sub(&mut self, a: i64, b: i64) -> i64 {
        let v = a - b;
        self.record(OpClass::Add, v);
        v
    }

    #[inline]
    fn mul(&mut self, a: i64, b: i64) -> i64 {
        let v = a * b;
        self.record(OpClass::Mul, v);
        v
    }

    /// Floor division by a positive divisor.
    #[inline]
    fn div_floor(&mut self, a: i64, b: i64) -> i64 {
        debug_assert!(b > 0);
        let v = a.div_euclid(b);
        self.record(OpClass::Div, v);
        v
    }

    #[inline]
    fn shl(&mut self, a: i64, bits: u32) -> i64 {
        let v = a << bits;
        self.record(OpClass::Shift, v);
        v
    }

    /// Arithmetic right shift (floor division by `2^bits`).
    #[inline]
    fn shr(&mut self, a: i64, bits: u32) -> i64 {
        let v = a >> bits;
        self.record(OpClass::Shift, v);
        v
    }

    #[inline]
    fn mask(&mut self, a: i64, bits: u32) -> i64 {
        let v = a & ((1i64 << bits) - 1);
        self.record(OpClass::Shift, v);
        v
    }

    #[inline]
    fn abs(&mut self, a: i64) -> i64 {
        let v = a.abs();
        self.record(OpClass::Sign, v);
        v
    }

    /// Multiply by a sign in {-1, 0, +1}; a mux, not a multiplication.
    #[inline]
    fn apply_sign(&mut self, sign: i8, a: i64) -> i64 {
        let v = match sign {
            1 => a,
            -1 => -a,
            _ => 0,
        };
        self.record(OpClass::Sign, v);
        v
    }

    /// `(a + b + carry) mod 6` on wedge indices: one 3-bit modular add.
    #[inline]
    fn wedge_add(&mut self, a: u8, b: u8, carry: bool) -> u8 {
        let v = (a + b + carry as u8) % 6;
        self.record(OpClass::Add, v as i64);
        v
    }

    #[inline]
    fn predicate(&mut self) {
        self.record(OpClass::Predicate, 0);
    }
}

/// Plain arithmetic with no bookkeeping.
#[derive(Debug, Clone, Copy, Default)]
pub struct Exact;

impl Alu for Exact {}
