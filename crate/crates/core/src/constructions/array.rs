use std::fmt;

use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// A `v x r` array over `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryArray {
    a: Matrix<u8>,
}

impl BinaryArray {
    pub fn new(a: Matrix<u8>) -> Result<Self> {
        for i in 0..a.rows() {
            if let Some(j) = a.row(i).iter().position(|&x| x > 1) {
                return Err(Error::BadParams(format!(
                    "array entry ({},{}) is {}, expected 0 or 1",
                    i + 1,
                    j + 1,
                    a[(i, j)]
                )));
            }
        }
        Ok(BinaryArray { a })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        BinaryArray::new(Matrix::from_rows(rows))
    }

    pub fn v(&self) -> usize {
        self.a.rows()
    }

    pub fn r(&self) -> usize {
        self.a.cols()
    }

    pub fn matrix(&self) -> &Matrix<u8> {
        &self.a
    }

    pub fn get(&self, i: usize, h: usize) -> u8 {
        self.a[(i, h)]
    }

    pub fn zeros_in_column(&self, h: usize) -> usize {
        (0..self.v()).filter(|&i| self.a[(i, h)] == 0).count()
    }

    /// Number of rows with `0` in both columns.
    pub fn mu0(&self, h: usize, g: usize) -> usize {
        (0..self.v())
            .filter(|&i| self.a[(i, h)] == 0 && self.a[(i, g)] == 0)
            .count()
    }

    /// Keeps the listed columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryArray {
        BinaryArray {
            a: Matrix::from_fn(self.v(), cols.len(), |i, j| self.a[(i, cols[j])]),
        }
    }

    /// Rows as strings of `0`/`1`.
    pub fn rows_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.v() {
            out.extend(self.a.row(i).iter().map(|&x| if x == 0 { '0' } else { '1' }));
            out.push('\n');
        }
        out
    }
}

/// Common zero count of all columns, if any.
fn column_zero_count(a: &BinaryArray) -> std::result::Result<usize, (usize, usize)> {
    let k1 = a.zeros_in_column(0);
    for h in 1..a.r() {
        let z = a.zeros_in_column(h);
        if z != k1 {
            return Err((h, z));
        }
    }
    Ok(k1)
}

/// Outcome of [`verify_ba`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaCheck {
    pub is_ba: bool,
    /// Common `(0,0)` count; `None` when not a BA or with fewer than two columns.
    pub theta: Option<i64>,
    pub k1: Option<usize>,
}

/// Strength-2 balance: equal column zero counts and a constant `(0,0)` count.
///
/// With equal zero counts `k1`, the remaining pair counts are forced:
/// `mu1 = k1 - theta` and `mu2 = v - 2 k1 + theta`.
pub fn verify_ba(a: &BinaryArray) -> BaCheck {
    let fail = BaCheck { is_ba: false, theta: None, k1: None };
    if a.r() == 0 {
        return fail;
    }
    let Ok(k1) = column_zero_count(a) else { return fail };
    let mut theta = None;
    for h in 0..a.r() {
        for g in h + 1..a.r() {
            let m = a.mu0(h, g) as i64;
            match theta {
                None => theta = Some(m),
                Some(t) if t != m => return BaCheck { k1: Some(k1), ..fail },
                _ => {}
            }
        }
    }
    BaCheck { is_ba: true, theta, k1: Some(k1) }
}

/// Outcome of [`verify_gba`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbaCheck {
    pub is_gba: bool,
    pub theta: Option<i64>,
    pub k1: Option<usize>,
}

/// Grouped balance for consecutive column groups of the given sizes: pairs
/// inside a group meet `theta` times, pairs across groups `theta + 1` times.
pub fn verify_gba(a: &BinaryArray, groups: &[usize]) -> GbaCheck {
    let fail = GbaCheck { is_gba: false, theta: None, k1: None };
    if groups.iter().sum::<usize>() != a.r() || groups.contains(&0) || a.r() == 0 {
        return fail;
    }
    let Ok(k1) = column_zero_count(a) else { return fail };
    let label: Vec<usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, &t)| std::iter::repeat_n(g, t))
        .collect();
    let mut theta = None;
    for h in 0..a.r() {
        for g in h + 1..a.r() {
            let m = a.mu0(h, g) as i64;
            let implied = if label[h] == label[g] { m } else { m - 1 };
            match theta {
                None => theta = Some(implied),
                Some(t) if t != implied => return GbaCheck { k1: Some(k1), ..fail },
                _ => {}
            }
        }
    }
    GbaCheck { is_gba: true, theta, k1: Some(k1) }
}

/// Verified `BA(v, r, 2; theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedArray {
    array: BinaryArray,
    k1: usize,
    theta: i64,
}

impl BalancedArray {
    /// Checks that `a` is a BA with the given `theta`.
    pub fn new(array: BinaryArray, theta: i64) -> Result<Self> {
        let c = verify_ba(&array);
        match (c.is_ba, c.theta, c.k1) {
            (true, t, Some(k1)) if t.is_none_or(|t| t == theta) => {
                Ok(BalancedArray { array, k1, theta })
            }
            _ => Err(Error::BadParams(format!(
                "array is not a BA with theta = {theta} (found {:?})",
                c.theta
            ))),
        }
    }

    pub fn array(&self) -> &BinaryArray {
        &self.array
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }

    pub fn k1(&self) -> usize {
        self.k1
    }
}

/// Verified `GBA(v, (t_1, ..., t_n), 2; theta)` with consecutive groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedBalancedArray {
    array: BinaryArray,
    k1: usize,
    theta: i64,
    groups: Vec<usize>,
}

impl GroupedBalancedArray {
    pub fn new(array: BinaryArray, groups: Vec<usize>, theta: i64) -> Result<Self> {
        let c = verify_gba(&array, &groups);
        match (c.is_gba, c.theta, c.k1) {
            (true, Some(t), Some(k1)) if t == theta => {
                Ok(GroupedBalancedArray { array, k1, theta, groups })
            }
            _ => Err(Error::BadParams(format!(
                "array is not a GBA with groups {groups:?} and theta = {theta} (found {:?})",
                c.theta
            ))),
        }
    }

    pub fn array(&self) -> &BinaryArray {
        &self.array
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }
}

/// Entry `0` at `(i, h)` iff treatment `i + 1` lies in the size-`k1` block of replicate `h`.
pub fn design_to_array(d: &ResolvableDesign) -> BinaryArray {
    let m = d.membership();
    BinaryArray {
        a: Matrix::from_fn(d.v(), d.r(), |i, h| u8::from(!m[h][i])),
    }
}

/// Inverse of [`design_to_array`] for a setting with the array's shape.
pub fn array_to_design(a: &BinaryArray, setting: DesignSetting) -> Result<ResolvableDesign> {
    if a.v() != setting.v() || a.r() != setting.r() {
        return Err(Error::BadParams(format!(
            "array is {}x{}, setting {setting} needs {}x{}",
            a.v(),
            a.r(),
            setting.v(),
            setting.r()
        )));
    }
    let mut blocks = Vec::with_capacity(a.r());
    for h in 0..a.r() {
        let found = a.zeros_in_column(h);
        if found != setting.k1() {
            return Err(Error::BadColumnCounts {
                column: h + 1,
                expected: setting.k1(),
                found,
            });
        }
        blocks.push((0..a.v()).filter(|&i| a.get(i, h) == 0).map(|i| i + 1).collect());
    }
    ResolvableDesign::from_block1(setting, blocks)
}

/// Contents of an array file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayFile {
    pub array: BinaryArray,
    pub theta: i64,
    pub groups: Option<Vec<usize>>,
}

impl ArrayFile {
    /// Setting implied by the column zero counts.
    pub fn setting(&self) -> Result<DesignSetting> {
        let k1 = column_zero_count(&self.array).map_err(|(h, found)| Error::BadColumnCounts {
            column: h + 1,
            expected: self.array.zeros_in_column(0),
            found,
        })?;
        DesignSetting::new(self.array.v(), self.array.r(), k1, self.array.v() - k1)
    }

    pub fn to_design(&self) -> Result<ResolvableDesign> {
        array_to_design(&self.array, self.setting()?)
    }
}

impl fmt::Display for ArrayFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.array.v(), self.array.r(), self.theta)?;
        if let Some(g) = &self.groups {
            let parts: Vec<String> = g.iter().map(usize::to_string).collect();
            write!(f, " groups={}", parts.join(","))?;
        }
        writeln!(f)?;
        f.write_str(&self.array.rows_text())
    }
}

/// Parses `v r theta [groups=t1,t2,...]` followed by `v` rows of `0`/`1`.
///
/// Whitespace inside rows is ignored; `#` lines are comments.
pub fn parse_array(text: &str) -> Result<ArrayFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `v r theta`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if !(3..=4).contains(&fields.len()) {
        return Err(Error::parse(hline, "header must be `v r theta [groups=...]`"));
    }
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::parse(hline, format!("expected a non-negative integer, got {s:?}")))
    };
    let (v, r) = (num(fields[0])?, num(fields[1])?);
    let theta: i64 = fields[2]
        .parse()
        .map_err(|_| Error::parse(hline, format!("expected theta, got {:?}", fields[2])))?;
    let groups = match fields.get(3) {
        None => None,
        Some(g) => {
            let list = g
                .strip_prefix("groups=")
                .ok_or_else(|| Error::parse(hline, format!("expected groups=..., got {g:?}")))?;
            let t = list.split(',').map(num).collect::<Result<Vec<_>>>()?;
            if t.iter().sum::<usize>() != r || t.contains(&0) {
                return Err(Error::parse(hline, format!("group sizes {t:?} do not partition {r} columns")));
            }
            Some(t)
        }
    };
    let mut rows = Vec::with_capacity(v);
    let mut last = hline;
    for (line, l) in lines {
        last = line;
        if rows.len() == v {
            return Err(Error::parse(line, format!("more than {v} rows")));
        }
        let row = l
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::parse(line, format!("unexpected symbol {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if row.len() != r {
            return Err(Error::parse(line, format!("row has {} symbols, expected {r}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != v {
        return Err(Error::parse(last + 1, format!("expected {v} rows, found {}", rows.len())));
    }
    Ok(ArrayFile {
        array: BinaryArray::from_rows(rows)?,
        theta,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ecd4() -> ResolvableDesign {
        let s = DesignSetting::new(9, 4, 6, 3).unwrap();
        ResolvableDesign::from_block1(
            s,
            vec![
                vec![1, 2, 3, 4, 5, 6],
                vec![1, 2, 3, 4, 7, 8],
                vec![1, 2, 5, 6, 7, 8],
                vec![3, 4, 5, 6, 7, 8],
            ],
        )
        .unwrap()
    }

    #[test]
    fn ecd4_is_an_ecd_array() {
        let d = ecd4();
        let a = design_to_array(&d);
        assert_eq!((a.v(), a.r()), (9, 4));
        assert!((0..4).all(|h| a.zeros_in_column(h) == 6));
        let c = verify_ba(&a);
        assert_eq!((c.is_ba, c.theta), (true, Some(4)));
        assert_eq!(array_to_design(&a, d.setting()).unwrap(), d);
    }

    #[test]
    fn extra_zero_column_breaks_balance() {
        let a = design_to_array(&ecd4());
        let mut rows: Vec<Vec<u8>> = (0..9).map(|i| a.matrix().row(i).to_vec()).collect();
        for row in &mut rows {
            row.push(0);
        }
        let bad = BinaryArray::from_rows(rows).unwrap();
        assert!(!verify_ba(&bad).is_ba);
        let s = DesignSetting::new(9, 5, 6, 3).unwrap();
        assert_eq!(
            array_to_design(&bad, s),
            Err(Error::BadColumnCounts { column: 5, expected: 6, found: 9 })
        );
    }

    #[test]
    fn file_round_trip() {
        let f = ArrayFile {
            array: design_to_array(&ecd4()),
            theta: 4,
            groups: Some(vec![4]),
        };
        let back = parse_array(&f.to_string()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_design().unwrap(), ecd4());
    }

    #[test]
    fn parse_reports_lines() {
        assert!(matches!(parse_array("2 2 0\n01\n0x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_array("2 2 0 groups=1,2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_array("2 2 0\n01\n"), Err(Error::Parse { line: 3, .. })));
    }
}
