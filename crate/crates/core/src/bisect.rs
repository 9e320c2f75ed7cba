/// Bisects a monotone predicate on `[lo, hi]`.
///
/// `holds(lo)` is assumed true and `holds(hi)` false; the predicate must be
/// true on a prefix of the interval. Stops when `hi - lo <= tol` or after
/// `max_iter` halvings and returns the final bracket `(lo, hi, iterations)`,
/// with `lo` still on the true side.
pub(crate) fn bisect_boundary(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
    mut holds: impl FnMut(f64) -> bool,
) -> (f64, f64, usize) {
    let mut iterations = 0;
    while hi - lo > tol && iterations < max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    (lo, hi, iterations)
}
