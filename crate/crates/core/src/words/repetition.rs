//! Classical repetition scanners.
//!
//! A factor of length `n` with period `p` exists exactly when some run of
//! consecutive positions `i` with `w[i] == w[i + p]` has length `n - p`.
//! Each scanner walks every period once, so the cost is `O(|w|²)`.

use super::Letter;

/// True iff `w` has a factor of period `p` and length at least
/// `p + extra(p)` for some `p >= 1`.
fn has_periodic_factor(w: &[Letter], extra: impl Fn(usize) -> usize) -> bool {
    let n = w.len();
    for p in 1..n {
        let need = extra(p);
        if p + need > n {
            // `p + extra(p)` is nondecreasing in p for every caller
            break;
        }
        let mut run = 0;
        for i in 0..n - p {
            if w[i] == w[i + p] {
                run += 1;
                if run >= need {
                    return true;
                }
            } else {
                run = 0;
            }
        }
    }
    false
}

/// No factor `uu` with `u` nonempty.
pub fn is_square_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| p)
}

/// No factor `uuu` with `u` nonempty.
pub fn is_cube_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| 2 * p)
}

/// No factor `uuuu` with `u` nonempty.
pub fn is_4power_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| 3 * p)
}

/// No factor `avava` with `a` a letter (equivalently `xyxyx`, `x, y` nonempty).
pub fn is_overlap_free(w: &[Letter]) -> bool {
    !has_periodic_factor(w, |p| p + 1)
}
