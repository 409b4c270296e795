//! Array recipes from Hadamard matrices, one per block-size pattern.
//!
//! Each recipe performs its row and column surgery on a standardized matrix,
//! maps `+1 -> 1` and `-1 -> 0`, and verifies the result before returning.

use super::array::{
    array_to_design, ArrayFile, BalancedArray, BinaryArray, GroupedBalancedArray,
};
use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};
use crate::hadamard::{find_theorem28_submatrix, hadamard_of_order, HadamardMatrix};

/// Output of a recipe: a plain BA or a grouped one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Balanced(BalancedArray),
    Grouped(GroupedBalancedArray),
}

impl Constructed {
    pub fn array(&self) -> &BinaryArray {
        match self {
            Constructed::Balanced(b) => b.array(),
            Constructed::Grouped(g) => g.array(),
        }
    }

    pub fn theta(&self) -> i64 {
        match self {
            Constructed::Balanced(b) => b.theta(),
            Constructed::Grouped(g) => g.theta(),
        }
    }

    pub fn k1(&self) -> usize {
        match self {
            Constructed::Balanced(b) => b.k1(),
            Constructed::Grouped(g) => g.k1(),
        }
    }

    /// Group sizes; `None` for a plain BA.
    pub fn groups(&self) -> Option<&[usize]> {
        match self {
            Constructed::Balanced(_) => None,
            Constructed::Grouped(g) => Some(g.groups()),
        }
    }

    pub fn setting(&self) -> Result<DesignSetting> {
        let a = self.array();
        DesignSetting::new(a.v(), a.r(), self.k1(), a.v() - self.k1())
    }

    pub fn to_design(&self) -> Result<ResolvableDesign> {
        array_to_design(self.array(), self.setting()?)
    }

    pub fn to_file(&self) -> ArrayFile {
        ArrayFile {
            array: self.array().clone(),
            theta: self.theta(),
            groups: self.groups().map(<[usize]>::to_vec),
        }
    }
}

impl From<BalancedArray> for Constructed {
    fn from(b: BalancedArray) -> Self {
        Constructed::Balanced(b)
    }
}

impl From<GroupedBalancedArray> for Constructed {
    fn from(g: GroupedBalancedArray) -> Self {
        Constructed::Grouped(g)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

/// Standardized matrix of the required order, from the caller or built in.
fn hadamard(order: usize, given: Option<&HadamardMatrix>) -> Result<HadamardMatrix> {
    match given {
        Some(h) if h.order() != order => Err(bad(format!(
            "supplied Hadamard matrix has order {}, recipe needs {order}",
            h.order()
        ))),
        Some(h) => Ok(h.standardize()),
        None => hadamard_of_order(order),
    }
}

/// `+1 -> 1`, `-1 -> 0`.
fn to_symbols(rows: Vec<Vec<i8>>) -> Result<BinaryArray> {
    BinaryArray::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(|x| u8::from(x > 0)).collect())
            .collect(),
    )
}

fn submatrix(h: &HadamardMatrix, rows: &[usize], cols: &[usize]) -> Vec<Vec<i8>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| h.get(i, j)).collect())
        .collect()
}

fn check_r(r: usize, max: usize, bound: &str) -> Result<()> {
    if r < 2 {
        return Err(bad(format!("r = {r}: at least two replicates are needed")));
    }
    if r > max {
        return Err(bad(format!("r = {r} exceeds the bound {bound} = {max}")));
    }
    Ok(())
}

/// `k1 = k2 = v/2` even: `OA(v, r, 2; v/4)` from the non-constant columns of
/// a standardized order-`v` matrix.
pub fn construct_t25(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<BalancedArray> {
    if v < 4 || !v.is_multiple_of(4) {
        return Err(bad(format!("v = {v}: need k1 = k2 = v/2 even, i.e. v = 0 mod 4")));
    }
    check_r(r, v - 1, "v - 1")?;
    let h = hadamard(v, given)?;
    let rows: Vec<usize> = (0..v).collect();
    let cols: Vec<usize> = (1..=r).collect();
    BalancedArray::new(to_symbols(submatrix(&h, &rows, &cols))?, (v / 4) as i64)
}

/// `k1 = k2 = v/2` odd: `BA(v, r, 2; (v-2)/4)` from an order-`(v+2)` matrix by
/// dropping the first two rows and the columns where row 2 is `+1`.
pub fn construct_t26(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<BalancedArray> {
    if v < 6 || v % 4 != 2 {
        return Err(bad(format!("v = {v}: need k1 = k2 = v/2 odd, i.e. v = 2 mod 4")));
    }
    check_r(r, v / 2, "v/2")?;
    let n = v + 2;
    let h = hadamard(n, given)?;
    // After the column permutation the surviving columns are those with -1 in row 2.
    let minus: Vec<usize> = (1..n).filter(|&j| h.get(1, j) < 0).collect();
    let rows: Vec<usize> = (2..n).collect();
    BalancedArray::new(to_symbols(submatrix(&h, &rows, &minus[..r]))?, ((v - 2) / 4) as i64)
}

/// `k1 = k2 + 1` even: `BA(v, r, 2; (v+1)/4)` from an order-`(v+1)` matrix
/// without its first row and column.
pub fn construct_t27(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<BalancedArray> {
    if v < 7 || v % 4 != 3 {
        return Err(bad(format!("v = {v}: need k1 = k2 + 1 even, i.e. v = 3 mod 4")));
    }
    check_r(r, v, "v")?;
    let h = hadamard(v + 1, given)?;
    let rows: Vec<usize> = (1..=v).collect();
    let cols: Vec<usize> = (1..=r).collect();
    BalancedArray::new(to_symbols(submatrix(&h, &rows, &cols))?, ((v + 1) / 4) as i64)
}

/// `k1 = k2 + 1` odd.
///
/// For `r <= 4`, an `OA(v-1, r, 2)` plus a row of zeros gives
/// `BA(v, r, 2; (v+3)/4)`. For `r >= 5` and `v >= 9`, the four-row pattern in an
/// order-`(v+3)` matrix gives a uniform `GBA(v, (t1..t4), 2; (v-1)/4)`.
pub fn construct_t28(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<Constructed> {
    if v < 5 || v % 4 != 1 {
        return Err(bad(format!("v = {v}: need k1 = k2 + 1 odd, i.e. v = 1 mod 4")));
    }
    check_r(r, v + 3, "v + 3")?;
    if r <= 4 {
        if r > v - 2 {
            return Err(bad(format!("no OA({}, {r}, 2) on two symbols", v - 1)));
        }
        let oa = construct_t25(v - 1, r, given)?;
        let mut rows: Vec<Vec<u8>> = (0..v - 1).map(|i| oa.array().matrix().row(i).to_vec()).collect();
        rows.push(vec![0; r]);
        let a = BinaryArray::from_rows(rows)?;
        return Ok(BalancedArray::new(a, v.div_ceil(4) as i64)?.into());
    }
    if v < 9 {
        return Err(bad(format!("v = {v}: the four-group recipe needs v >= 9")));
    }
    let n = v + 3;
    let h = hadamard(n, given)?;
    let w = find_theorem28_submatrix(&h, r).ok_or(Error::NoSubmatrixFound { order: n, r })?;
    let mut groups: Vec<&Vec<(usize, bool)>> = w.groups.iter().collect();
    groups.sort_by_key(|g| g.len());
    let keep: Vec<usize> = (0..n).filter(|i| !w.rows.contains(i)).collect();
    let mut rows = vec![vec![1i8; r]];
    for &i in &keep {
        rows.push(
            groups
                .iter()
                .flat_map(|g| g.iter())
                .map(|&(j, neg)| if neg { -h.get(i, j) } else { h.get(i, j) })
                .collect(),
        );
    }
    let sizes = groups.iter().map(|g| g.len()).collect();
    Ok(GroupedBalancedArray::new(to_symbols(rows)?, sizes, ((v - 1) / 4) as i64)?.into())
}

/// `k1 = k2 + 2` even, `v >= 10`: `GBA(v, (t1, t2), 2; (v+2)/4)` from an
/// order-`(v+2)` matrix, with `t1 = floor(r/2)` and `t2 = ceil(r/2)`.
pub fn construct_t29(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<GroupedBalancedArray> {
    if v == 6 {
        return Err(bad(
            "use three groups for v=6 (Corollary 23(i)); not constructed",
        ));
    }
    if v < 10 || v % 4 != 2 {
        return Err(bad(format!("v = {v}: need k1 = k2 + 2 even and v >= 10, i.e. v = 2 mod 4")));
    }
    check_r(r, v / 2 + 1, "v/2 + 1")?;
    let n = v + 2;
    let h = hadamard(n, given)?;
    // Columns with rows 2, 3 equal to (+,-) and (-,+) survive the deletion.
    let first: Vec<usize> = (1..n).filter(|&j| h.get(1, j) > 0 && h.get(2, j) < 0).collect();
    let second: Vec<usize> = (1..n).filter(|&j| h.get(1, j) < 0 && h.get(2, j) > 0).collect();
    let (t1, t2) = (r / 2, r - r / 2);
    let cols: Vec<usize> = first[..t1].iter().chain(&second[..t2]).copied().collect();
    let mut rows = submatrix(&h, &(3..n).collect::<Vec<_>>(), &cols);
    rows.push(vec![-1; r]);
    GroupedBalancedArray::new(to_symbols(rows)?, vec![t1, t2], ((v + 2) / 4) as i64)
}

/// `k1 = k2 + 2` odd: `BA(v, r, 2; (v+4)/4)` from an order-`v` matrix without
/// its first row and column, plus a row of `-1`s.
pub fn construct_t30(v: usize, r: usize, given: Option<&HadamardMatrix>) -> Result<BalancedArray> {
    if v < 8 || !v.is_multiple_of(4) {
        return Err(bad(format!("v = {v}: need k1 = k2 + 2 odd, i.e. v = 0 mod 4, v >= 8")));
    }
    check_r(r, v - 1, "v - 1")?;
    let h = hadamard(v, given)?;
    let cols: Vec<usize> = (1..=r).collect();
    let mut rows = submatrix(&h, &(1..v).collect::<Vec<_>>(), &cols);
    rows.push(vec![-1; r]);
    BalancedArray::new(to_symbols(rows)?, ((v + 4) / 4) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_full, DesignClass};
    use crate::constructions::verify_gba;
    use crate::optimality::theta_params;

    fn theta_bar(c: &Constructed) -> i64 {
        theta_params(&c.setting().unwrap()).theta_bar
    }

    #[test]
    fn t25_small_and_bounds() {
        let a = construct_t25(8, 7, None).unwrap();
        assert_eq!((a.theta(), a.k1()), (2, 4));
        let b = construct_t25(4, 3, None).unwrap();
        assert_eq!(b.theta(), 1);
        assert!(matches!(construct_t25(8, 8, None), Err(Error::BadParams(_))));
    }

    #[test]
    fn t26_examples() {
        let a = construct_t26(10, 5, None).unwrap();
        assert_eq!(a.theta(), 2);
        assert_eq!(construct_t26(6, 3, None).unwrap().theta(), 1);
        assert!(matches!(construct_t26(10, 6, None), Err(Error::BadParams(_))));
    }

    #[test]
    fn t27_and_column_subsets() {
        let full = construct_t27(7, 7, None).unwrap();
        assert_eq!(full.theta(), 2);
        let sub = construct_t27(7, 3, None).unwrap();
        assert_eq!(sub.array(), &full.array().select_columns(&[0, 1, 2]));
        assert_eq!(construct_t27(11, 11, None).unwrap().theta(), 3);
    }

    #[test]
    fn t28_small_r_is_ecd_plus_one() {
        let c = construct_t28(9, 4, None).unwrap();
        assert_eq!(c.theta(), 3);
        let d = c.to_design().unwrap();
        assert_eq!(classify_full(&d).class, DesignClass::Ecd(theta_bar(&c) + 1));
    }

    #[test]
    fn t28_four_groups() {
        for (v, theta) in [(9, 2), (13, 3)] {
            let c = construct_t28(v, 5, None).unwrap();
            assert_eq!(c.theta(), theta);
            assert_eq!(c.groups(), Some(&[1, 1, 1, 2][..]));
            assert_eq!(theta_bar(&c), theta);
        }
    }

    #[test]
    fn t29_two_groups() {
        let c = construct_t29(10, 6, None).unwrap();
        assert_eq!((c.theta(), c.groups()), (3, &[3, 3][..]));
        let c = construct_t29(10, 5, None).unwrap();
        assert_eq!(c.groups(), &[2, 3]);
        assert!(verify_gba(c.array(), &[2, 3]).is_gba);
        let err = construct_t29(6, 4, None).unwrap_err();
        assert!(err.to_string().contains("Corollary 23(i)"));
    }

    #[test]
    fn t30_examples() {
        let a = construct_t30(12, 11, None).unwrap();
        assert_eq!((a.theta(), a.k1()), (4, 7));
        assert_eq!(construct_t30(8, 7, None).unwrap().theta(), 3);
    }
}
