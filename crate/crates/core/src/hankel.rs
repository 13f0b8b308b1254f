//! Triangular superregular Hankel arrays.
//!
//! An array of size m is a sequence b_1, .., b_m laid out on anti-diagonals:
//! entry (i, j) = b_{i+j-1}, defined only while i + j - 1 <= m (the support
//! triangle). The array is superregular when every square submatrix that
//! lies fully inside the triangle is nonsingular. Such arrays exist exactly
//! for m <= q, and several code constructions below carve their parity
//! matrices out of one shared array.
//!
//! Generation is deterministic:
//!
//! * prime fields with q >= m + 1 use the Cauchy closed form b_t = t^{-1}
//!   (every fully supported submatrix is then a Cauchy matrix), and
//! * otherwise a greedy search extends the sequence one entry at a time,
//!   always picking the smallest field element (by integer encoding) that
//!   keeps every newly completed minor nonsingular, backtracking if stuck.
//!   The result is the lexicographically least superregular array; the tight
//!   case q = m that some parameters force lands here.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::matrix::Matrix;

/// A superregular triangular Hankel array b_1, .., b_m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HankelArray {
    field: Field,
    values: Vec<FieldElement>,
}

impl HankelArray {
    /// Build the canonical superregular array of size m over `field`.
    pub fn superregular(field: &Field, m: usize) -> Result<HankelArray> {
        if num_bigint::BigUint::from(m) > *field.order() {
            return Err(Error::SizeExceedsField { m, q: field.order().to_string() });
        }
        let values = if field.m() == 1 && num_bigint::BigUint::from(m + 1) <= *field.order() {
            // Cauchy closed form: entries of any supported submatrix are
            // 1/(i + (j-1)) with distinct row values, distinct column values,
            // and all sums nonzero because i + j - 1 <= m < p.
            (1..=m as u128).map(|t| field.from_int(t).inv().expect("t < p")).collect()
        } else {
            greedy_search(field, m)?
        };
        Ok(HankelArray { field: field.clone(), values })
    }

    /// Wrap explicit values (used when loading a manifest). No
    /// superregularity check is performed here.
    pub fn from_values(field: &Field, values: Vec<FieldElement>) -> Result<HankelArray> {
        if values.iter().any(|v| v.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(HankelArray { field: field.clone(), values })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Array size m.
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// The defining sequence b_1, .., b_m.
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// Entry at 1-based (i, j); defined only inside the triangle.
    pub fn entry(&self, i: usize, j: usize) -> Result<&FieldElement> {
        let m = self.values.len();
        if i == 0 || j == 0 || i + j - 1 > m {
            return Err(Error::OutsideTriangle { m });
        }
        Ok(&self.values[i + j - 2])
    }

    /// Dense block with 1-based top-left corner (row_start, col_start).
    /// The whole block must lie inside the triangle.
    pub fn submatrix(
        &self,
        row_start: usize,
        row_count: usize,
        col_start: usize,
        col_count: usize,
    ) -> Result<Matrix> {
        let m = self.values.len();
        if row_start == 0 || col_start == 0 {
            return Err(Error::OutsideTriangle { m });
        }
        if row_count > 0 && col_count > 0 {
            let corner = (row_start + row_count - 1) + (col_start + col_count - 1) - 1;
            if corner > m {
                return Err(Error::OutsideTriangle { m });
            }
        }
        Ok(Matrix::from_fn(self.field.clone(), row_count, col_count, |i, j| {
            self.values[(row_start + i) + (col_start + j) - 2].clone()
        }))
    }
}

/// All square minors fully supported by entries b_1..b_k whose bottom-right
/// corner lies exactly on anti-diagonal k. Row/column sets are 0-based.
fn minors_completed_at(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    use crate::combin::combinations;
    let mut out = Vec::new();
    for a in 1..=k {
        let bmax = k + 1 - a; // corner column (1-based); corner row is a
        for t in 1..=a.min(bmax) {
            for rrest in combinations(a - 1, t - 1) {
                let mut rows: Vec<usize> = rrest.clone();
                rows.push(a - 1);
                for crest in combinations(bmax - 1, t - 1) {
                    let mut cols: Vec<usize> = crest.clone();
                    cols.push(bmax - 1);
                    out.push((rows.clone(), cols));
                }
            }
        }
    }
    out
}

fn greedy_search(field: &Field, m: usize) -> Result<Vec<FieldElement>> {
    // Candidates are tried in encoding order; backtracking makes the search
    // exhaustive, so the first complete array it returns is the
    // lexicographically least one.
    let mut chosen: Vec<FieldElement> = Vec::with_capacity(m);
    let mut cursors: Vec<Box<dyn Iterator<Item = FieldElement>>> = Vec::with_capacity(m);
    let mut minors: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::with_capacity(m);

    let fresh_cursor = |field: &Field| -> Box<dyn Iterator<Item = FieldElement>> {
        Box::new(field.clone().into_elements_skip_zero())
    };

    while chosen.len() < m {
        let level = chosen.len() + 1;
        if cursors.len() < level {
            cursors.push(fresh_cursor(field));
            if minors.len() < level {
                minors.push(minors_completed_at(level));
            }
        }
        let mut found = None;
        'cand: while let Some(cand) = cursors[level - 1].next() {
            for (rows, cols) in &minors[level - 1] {
                let det_is_zero = {
                    let minor = Matrix::from_fn(field.clone(), rows.len(), cols.len(), |u, v| {
                        let idx = rows[u] + cols[v];
                        if idx == level - 1 {
                            cand.clone()
                        } else {
                            chosen[idx].clone()
                        }
                    });
                    minor.det().expect("minor is square").is_zero()
                };
                if det_is_zero {
                    continue 'cand;
                }
            }
            found = Some(cand);
            break;
        }
        match found {
            Some(cand) => chosen.push(cand),
            None => {
                // exhausted this level: backtrack and advance the previous one
                cursors.pop();
                if chosen.pop().is_none() {
                    return Err(Error::SearchExhausted { m });
                }
            }
        }
    }
    Ok(chosen)
}

impl Field {
    /// Owned iterator over nonzero elements in encoding order (helper for the
    /// greedy search, which needs 'static cursors).
    fn into_elements_skip_zero(self) -> impl Iterator<Item = FieldElement> {
        let mut coeffs = vec![0u64; self.m()];
        let mut exhausted = false;
        std::iter::from_fn(move || {
            if exhausted {
                return None;
            }
            // base-p odometer starting from 1
            let mut carry = true;
            for digit in coeffs.iter_mut() {
                if !carry {
                    break;
                }
                *digit += 1;
                if *digit == self.p() {
                    *digit = 0;
                } else {
                    carry = false;
                }
            }
            if carry {
                exhausted = true;
                return None;
            }
            Some(self.element(coeffs.clone()).expect("odometer stays in range"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::combinations;

    /// Exhaustive oracle: check every fully supported square submatrix.
    fn assert_superregular_by_enumeration(t: &HankelArray) {
        let m = t.size();
        for size in 1..=m.div_ceil(2) {
            for rows in combinations(m, size) {
                for cols in combinations(m, size) {
                    if rows[size - 1] + cols[size - 1] + 1 > m {
                        continue; // corner outside the triangle
                    }
                    let minor = Matrix::from_fn(t.field().clone(), size, size, |u, v| {
                        t.entry(rows[u] + 1, cols[v] + 1).unwrap().clone()
                    });
                    assert!(
                        !minor.det().unwrap().is_zero(),
                        "singular minor rows {rows:?} cols {cols:?} of size-{m} array"
                    );
                }
            }
        }
    }

    #[test]
    fn size_one_is_canonical() {
        for field in [Field::prime(7).unwrap(), Field::new(2, 2, None).unwrap()] {
            let t = HankelArray::superregular(&field, 1).unwrap();
            assert_eq!(t.values(), &[field.one()]);
        }
    }

    #[test]
    fn cauchy_form_over_gf13() {
        let field = Field::prime(13).unwrap();
        let t = HankelArray::superregular(&field, 12).unwrap();
        let expect: Vec<u128> = vec![1, 7, 9, 10, 8, 11, 2, 5, 3, 4, 6, 12];
        let got: Vec<u128> = t.values().iter().map(|v| v.encoding().try_into().unwrap()).collect();
        assert_eq!(got, expect, "b_t = t^{{-1}} mod 13");
        assert_superregular_by_enumeration(&t);
    }

    #[test]
    fn greedy_handles_the_tight_case_gf11() {
        // q = m = 11: the Cauchy form does not apply, the greedy search must
        let field = Field::prime(11).unwrap();
        let t = HankelArray::superregular(&field, 11).unwrap();
        assert_eq!(t.size(), 11);
        assert_superregular_by_enumeration(&t);
        // deterministic
        let again = HankelArray::superregular(&field, 11).unwrap();
        assert_eq!(t, again);
        // greedy always starts at the smallest nonzero entry
        assert!(t.values()[0].is_one());
    }

    #[test]
    fn greedy_on_extension_field() {
        let field = Field::new(2, 2, None).unwrap();
        let t = HankelArray::superregular(&field, 4).unwrap();
        assert_superregular_by_enumeration(&t);
    }

    #[test]
    fn triangle_bounds() {
        let field = Field::prime(11).unwrap();
        let t = HankelArray::superregular(&field, 5).unwrap();
        assert!(t.entry(3, 3).is_ok());
        assert!(matches!(t.entry(3, 4), Err(Error::OutsideTriangle { m: 5 })));
        assert!(matches!(t.entry(0, 1), Err(Error::OutsideTriangle { .. })));
        assert!(t.submatrix(1, 3, 1, 3).is_ok());
        assert!(matches!(t.submatrix(2, 3, 2, 3), Err(Error::OutsideTriangle { .. })));
        // degenerate empty block is fine
        assert_eq!(t.submatrix(1, 0, 1, 0).unwrap().rows(), 0);
    }

    #[test]
    fn entries_are_constant_on_antidiagonals() {
        let field = Field::prime(13).unwrap();
        let t = HankelArray::superregular(&field, 12).unwrap();
        for i in 1..=11 {
            for j in 1..=12 - i {
                assert_eq!(t.entry(i, j + 1).unwrap(), t.entry(i + 1, j).unwrap());
            }
        }
    }

    #[test]
    fn rejects_oversized_arrays() {
        let field = Field::prime(7).unwrap();
        assert!(matches!(
            HankelArray::superregular(&field, 8),
            Err(Error::SizeExceedsField { m: 8, .. })
        ));
        assert!(HankelArray::superregular(&field, 7).is_ok());
    }

    #[test]
    fn minor_enumeration_counts() {
        // anti-diagonal k of a big triangle completes 2^(k-1) minors
        for k in 1..=10 {
            assert_eq!(minors_completed_at(k).len(), 1 << (k - 1));
        }
    }
}
