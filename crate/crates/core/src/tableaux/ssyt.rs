//! Semistandard fillings of skew diagrams in English convention: rows
//! weakly increase to the right, columns strictly increase downwards.

/// A skew diagram `outer / inner`, both given as row lengths from the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewShape {
    pub outer: Vec<u32>,
    pub inner: Vec<u32>,
}

impl SkewShape {
    /// The rectangle `(width^rows)` minus `inner` in its top left corner.
    pub fn in_rectangle(width: u32, rows: u32, inner: &[u32]) -> Self {
        let mut inner: Vec<u32> = inner.to_vec();
        inner.resize(rows as usize, 0);
        SkewShape {
            outer: vec![width; rows as usize],
            inner,
        }
    }

    /// Cells `(row, col)`, 0-based, row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.outer
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| {
                let start = self.inner.get(r).copied().unwrap_or(0);
                (start..len).map(move |c| (r, c as usize))
            })
            .collect()
    }

    fn contains(&self, r: usize, c: usize) -> bool {
        let start = self.inner.get(r).copied().unwrap_or(0) as usize;
        r < self.outer.len() && c >= start && c < self.outer[r] as usize
    }
}

/// All semistandard fillings with letters `1..=letters`; each filling lists
/// the entries in the order of [`SkewShape::cells`].
pub fn skew_ssyt(shape: &SkewShape, letters: u32) -> Vec<Vec<u32>> {
    let cells = shape.cells();
    let index: std::collections::HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    let mut out = Vec::new();
    let mut fill = vec![0u32; cells.len()];
    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        index: &std::collections::HashMap<(usize, usize), usize>,
        shape: &SkewShape,
        letters: u32,
        fill: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == cells.len() {
            out.push(fill.clone());
            return;
        }
        let (r, c) = cells[pos];
        let mut lo = 1;
        if c > 0 && shape.contains(r, c - 1) {
            lo = lo.max(fill[index[&(r, c - 1)]]);
        }
        if r > 0 && shape.contains(r - 1, c) {
            lo = lo.max(fill[index[&(r - 1, c)]] + 1);
        }
        for v in lo..=letters {
            fill[pos] = v;
            rec(pos + 1, cells, index, shape, letters, fill, out);
        }
    }
    rec(0, &cells, &index, shape, letters, &mut fill, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_shapes() {
        // single column of length 2 on 3 letters: C(3,2)
        let col = SkewShape {
            outer: vec![1, 1],
            inner: vec![],
        };
        assert_eq!(skew_ssyt(&col, 3).len(), 3);
        // single row of length 2 on 3 letters: multisets
        let row = SkewShape {
            outer: vec![2],
            inner: vec![],
        };
        assert_eq!(skew_ssyt(&row, 3).len(), 6);
        // (2,1) on 3 letters: 8 (dimension of the adjoint of sl3)
        let hook = SkewShape {
            outer: vec![2, 1],
            inner: vec![],
        };
        assert_eq!(skew_ssyt(&hook, 3).len(), 8);
    }

    #[test]
    fn skew_and_empty() {
        let empty = SkewShape::in_rectangle(2, 3, &[2, 2, 2]);
        assert_eq!(skew_ssyt(&empty, 4), vec![Vec::<u32>::new()]);
        // (2,2)/(1): cells (0,1),(1,0),(1,1); letters 1..2 gives 2 fillings
        let s = SkewShape::in_rectangle(2, 2, &[1]);
        assert_eq!(s.cells(), vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(skew_ssyt(&s, 2), vec![vec![1, 1, 2], vec![1, 2, 2]]);
    }
}
