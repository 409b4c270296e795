use super::HadamardMatrix;
use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Sylvester's doubling `H -> [[H, H], [H, -H]]` from `[1]`.
pub fn sylvester(m: usize) -> Result<HadamardMatrix> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    let h = Matrix::from_fn(m, m, |i, j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 });
    HadamardMatrix::new(h)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Quadratic character on `Z_q`.
fn chi(q: usize) -> Vec<i8> {
    let mut c = vec![-1i8; q];
    c[0] = 0;
    for x in 1..q {
        c[x * x % q] = 1;
    }
    c
}

/// Jacobsthal matrix `Q[i][j] = chi(j - i)`.
fn jacobsthal(q: usize) -> Matrix<i8> {
    let c = chi(q);
    Matrix::from_fn(q, q, |i, j| c[(j + q - i) % q])
}

/// Paley I (`n = q + 1`, `q = 3 mod 4`) or Paley II (`n = 2(q + 1)`,
/// `q = 1 mod 4`) with `q` prime; the result is standardized.
pub fn paley(n: usize) -> Result<HadamardMatrix> {
    if n >= 4 && is_prime(n - 1) && (n - 1) % 4 == 3 {
        let q = n - 1;
        let jq = jacobsthal(q);
        // H = I + S with S = [[0, 1'], [-1, Q]] skew-symmetric.
        let h = Matrix::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => 1,
            (0, _) => 1,
            (_, 0) => -1,
            _ if i == j => 1,
            _ => jq[(i - 1, j - 1)],
        });
        return Ok(HadamardMatrix::new(h)?.standardize());
    }
    if n.is_multiple_of(2) && n >= 6 && is_prime(n / 2 - 1) && (n / 2 - 1) % 4 == 1 {
        let q = n / 2 - 1;
        let jq = jacobsthal(q);
        let m = q + 1;
        let c = Matrix::from_fn(m, m, |i, j| match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => jq[(i - 1, j - 1)],
        });
        // 0 -> [[1, -1], [-1, -1]], +-1 -> +-[[1, 1], [1, -1]].
        let h = Matrix::from_fn(n, n, |i, j| {
            let (a, b) = (i % 2, j % 2);
            match c[(i / 2, j / 2)] {
                0 => {
                    if a == 0 && b == 0 {
                        1
                    } else {
                        -1
                    }
                }
                s => {
                    if a == 1 && b == 1 {
                        -s
                    } else {
                        s
                    }
                }
            }
        });
        return Ok(HadamardMatrix::new(h)?.standardize());
    }
    Err(Error::NoPaleyConstruction(n))
}

/// `A (x) B`.
pub fn kronecker(a: &HadamardMatrix, b: &HadamardMatrix) -> HadamardMatrix {
    let (na, nb) = (a.order(), b.order());
    let h = Matrix::from_fn(na * nb, na * nb, |i, j| a.get(i / nb, j / nb) * b.get(i % nb, j % nb));
    HadamardMatrix::new(h).expect("Kronecker product of Hadamard matrices")
}

/// Standardized matrix of order `n` from Sylvester, Paley, or `2^a` times a Paley order.
pub fn hadamard_of_order(n: usize) -> Result<HadamardMatrix> {
    if n.is_power_of_two() {
        return sylvester(n);
    }
    let mut base = n;
    let mut doubling = 1;
    while base.is_multiple_of(2) {
        if let Ok(p) = paley(base) {
            let h = if doubling == 1 { p } else { kronecker(&sylvester(doubling)?, &p) };
            return Ok(h.standardize());
        }
        base /= 2;
        doubling *= 2;
    }
    Err(Error::NoHadamard(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sylvester() {
        assert_eq!(sylvester(1).unwrap().matrix(), &Matrix::from_rows(vec![vec![1]]));
        assert_eq!(
            sylvester(2).unwrap().matrix(),
            &Matrix::from_rows(vec![vec![1, 1], vec![1, -1]])
        );
        assert!(sylvester(16).unwrap().is_standardized());
        assert_eq!(sylvester(12), Err(Error::NotPowerOfTwo(12)));
    }

    #[test]
    fn paley_orders() {
        for n in [4, 8, 12, 20, 24, 28, 32, 44] {
            let h = paley(n).unwrap();
            assert_eq!(h.order(), n);
            assert!(h.is_standardized());
        }
        // 28 = 2 * (13 + 1) is Paley II.
        assert!(paley(27).is_err());
        assert_eq!(paley(16), Err(Error::NoPaleyConstruction(16)));
    }

    #[test]
    fn composite_orders() {
        for n in [1, 2, 4, 8, 12, 16, 20, 24, 28, 40, 48, 56] {
            let h = hadamard_of_order(n).unwrap();
            assert_eq!(h.order(), n);
            assert!(h.is_standardized());
        }
        assert_eq!(hadamard_of_order(6), Err(Error::NoHadamard(6)));
    }
}
