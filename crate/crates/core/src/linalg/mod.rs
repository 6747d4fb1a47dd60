//! Exact dense linear algebra over ℤ, ℚ and 𝔽_p.

mod echelon;
mod quotient;
mod smith;

use std::cell::Cell;

pub use echelon::{image_basis, kernel_basis, rank, row_echelon, solve, LinearSystem, RowEchelon};
pub use quotient::{cokernel_invariants, subquotient, subquotient_invariants, KModuleInvariants, Subquotient};
pub use smith::{smith_normal_form, SmithForm};

use crate::error::{Error, Result};

/// Largest number of matrix entries built before [`Error::SizeGuard`].
pub const DEFAULT_SIZE_GUARD: usize = 4_000_000;

thread_local! {
    static SIZE_GUARD: Cell<usize> = const { Cell::new(DEFAULT_SIZE_GUARD) };
}

pub fn size_guard() -> usize {
    SIZE_GUARD.with(Cell::get)
}

/// Sets the guard for the current thread.
pub fn set_size_guard(limit: usize) {
    SIZE_GUARD.with(|g| g.set(limit));
}

/// Runs `f` with a temporary guard, restoring the previous one afterwards.
pub fn with_size_guard<T>(limit: usize, f: impl FnOnce() -> T) -> T {
    let previous = size_guard();
    set_size_guard(limit);
    let out = f();
    set_size_guard(previous);
    out
}

pub fn check_size(rows: usize, cols: usize) -> Result<()> {
    let limit = size_guard();
    match rows.checked_mul(cols) {
        Some(n) if n <= limit => Ok(()),
        _ => Err(Error::SizeGuard { rows, cols, limit }),
    }
}
