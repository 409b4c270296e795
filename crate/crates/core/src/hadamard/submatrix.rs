//! Search for the four-row pattern behind the four-group arrays.
//!
//! For four rows `R = (a, b, c, d)` a column qualifies for group `i` when,
//! after possibly negating the whole column, it is `-1` on `R[i]` and `+1` on
//! the other three rows. Group sizes are then trimmed to a uniform split.

use super::HadamardMatrix;

/// Four rows and the qualifying columns of each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem28Witness {
    pub rows: [usize; 4],
    /// Per group, `(column, negated)` pairs in increasing column order,
    /// trimmed to the requested `r`.
    pub groups: [Vec<(usize, bool)>; 4],
    /// Largest uniform `r` these rows support.
    pub max_r: usize,
}

impl Theorem28Witness {
    pub fn r(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.groups[i].len())
    }
}

/// Largest `sum t_i` with `1 <= t_i <= s_i` and `max t - min t <= 1`.
pub fn max_uniform_r(class_sizes: [usize; 4]) -> usize {
    let m = *class_sizes.iter().min().unwrap();
    if m == 0 {
        return 0;
    }
    class_sizes.iter().map(|&s| s.min(m + 1)).sum()
}

/// Uniform sizes summing to `r`, larger sizes on larger classes.
fn split(class_sizes: [usize; 4], r: usize) -> Option<[usize; 4]> {
    let mut order = [0, 1, 2, 3];
    order.sort_by_key(|&i| (class_sizes[i], i));
    let mut t = [0; 4];
    for (pos, &i) in order.iter().enumerate() {
        t[i] = r / 4 + usize::from(pos >= 4 - r % 4);
    }
    (0..4).all(|i| t[i] >= 1 && t[i] <= class_sizes[i]).then_some(t)
}

fn classes(h: &HadamardMatrix, rows: [usize; 4]) -> [Vec<(usize, bool)>; 4] {
    let mut out: [Vec<(usize, bool)>; 4] = Default::default();
    for col in 0..h.order() {
        let minus: Vec<usize> = (0..4).filter(|&i| h.get(rows[i], col) < 0).collect();
        match minus.len() {
            1 => out[minus[0]].push((col, false)),
            3 => {
                let plus = (0..4).find(|i| !minus.contains(i)).unwrap();
                out[plus].push((col, true));
            }
            _ => {}
        }
    }
    out
}

/// Best four rows supporting a uniform split of `r` columns.
///
/// Rows are chosen to maximize the supported `r`, then lexicographically.
/// Returns `None` when no four rows support `r`.
pub fn find_theorem28_submatrix(h: &HadamardMatrix, r: usize) -> Option<Theorem28Witness> {
    let n = h.order();
    if r < 4 {
        return None;
    }
    let mut best: Option<Theorem28Witness> = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let rows = [a, b, c, d];
                    let cl = classes(h, rows);
                    let sizes = [0, 1, 2, 3].map(|i| cl[i].len());
                    let max_r = max_uniform_r(sizes);
                    if best.as_ref().is_none_or(|w| max_r > w.max_r) {
                        best = Some(Theorem28Witness { rows, groups: cl, max_r });
                    }
                }
            }
        }
    }
    let Theorem28Witness { rows, mut groups, max_r } = best?;
    if max_r < r {
        return None;
    }
    let sizes = [0, 1, 2, 3].map(|i| groups[i].len());
    let t = split(sizes, r)?;
    for i in 0..4 {
        groups[i].truncate(t[i]);
    }
    Some(Theorem28Witness { rows, groups, max_r })
}
