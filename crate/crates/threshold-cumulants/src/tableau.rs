//! Poissonized tableaux, Schensted row insertion, and insertion thresholds.
//!
//! A **Poissonized tableau** is a filling of a Young diagram with values
//! from `[0, 1]` that increases weakly along rows (left to right) and
//! strictly up columns (bottom to top, French convention).  Row-inserting a
//! value `z ∈ [0, 1]` works level by level:
//!
//! * in the current row, `z` replaces the leftmost entry *strictly* larger
//!   than itself (entries equal to `z` are not bumped), and the replaced
//!   entry is inserted into the row above;
//! * if no entry is strictly larger, `z` is appended at the end of the row
//!   and the insertion stops, creating one new box.
//!
//! The Russian coordinate `u = column − row` of the new box, as a function
//! of `z`, is a weakly increasing right-continuous step function whose jump
//! points are entries of the tableau.  For a cutoff `u₀`, the **insertion
//! threshold** is
//!
//! ```text
//! F_T(u₀) = inf { z ∈ [0, 1] : u_ins(T, z) > u₀ },      inf ∅ = 1,
//! ```
//!
//! i.e. the smallest value whose insertion creates a box strictly to the
//! right of `u₀` in Russian coordinates.  Because the jump points are
//! tableau entries, `F_T(u₀)` is always an entry, `0`, or `1`, and is
//! computed here exactly.
//!
//! Repeated insertion of a word gives the Robinson–Schensted pair: the
//! insertion tableau (Poissonized) and the recording tableau (standard).

use serde::{Deserialize, Serialize};

use crate::diagram::{u_of_box, YoungDiagram};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A filling of a Young diagram with values in `[0, 1]`, weakly increasing
/// along rows and strictly increasing up columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonizedTableau {
    rows: Vec<Vec<Rational>>,
}

/// The boxes visited by one row insertion, bottom row first; the last box
/// is the newly created one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BumpingRoute {
    boxes: Vec<(usize, usize)>,
}

impl BumpingRoute {
    /// Visited boxes as `(row, column)` pairs (1-based, rows from the
    /// bottom), one per row the insertion touched.
    pub fn boxes(&self) -> &[(usize, usize)] {
        &self.boxes
    }

    /// The newly created box (the last visited one).
    pub fn new_box(&self) -> (usize, usize) {
        *self.boxes.last().expect("a route visits at least one box")
    }
}

/// Result of inserting one value: the grown tableau, the bumping route,
/// and the coordinates of the new box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionOutcome {
    pub tableau: PoissonizedTableau,
    pub route: BumpingRoute,
    pub new_box: (usize, usize),
}

impl PoissonizedTableau {
    /// The empty tableau.
    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Validates and builds a tableau from rows (bottom row first).
    ///
    /// # Errors
    ///
    /// [`Error::InvalidTableau`] if the row lengths do not form a
    /// partition, an entry lies outside `[0, 1]`, a row decreases, or a
    /// column fails to increase strictly.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lengths.iter().any(|&l| l == 0) {
            return Err(Error::InvalidTableau("empty row".into()));
        }
        if lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!(
                "row lengths {lengths:?} do not form a partition"
            )));
        }
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        for (r0, row) in rows.iter().enumerate() {
            for (c0, entry) in row.iter().enumerate() {
                if entry < &zero || entry > &one {
                    return Err(Error::InvalidTableau(format!(
                        "entry {entry} at row {}, column {} is outside [0, 1]",
                        r0 + 1,
                        c0 + 1
                    )));
                }
                if c0 + 1 < row.len() && &row[c0 + 1] < entry {
                    return Err(Error::InvalidTableau(format!(
                        "row {} decreases at column {}",
                        r0 + 1,
                        c0 + 2
                    )));
                }
                if r0 + 1 < rows.len() && rows[r0 + 1].len() > c0 && rows[r0 + 1][c0] <= *entry {
                    return Err(Error::InvalidTableau(format!(
                        "column {} fails to increase strictly between rows {} and {}",
                        c0 + 1,
                        r0 + 1,
                        r0 + 2
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    /// Rows of entries, bottom row first.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// The underlying Young diagram.
    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::new(self.rows.iter().map(Vec::len).collect())
            .expect("tableau rows always form a partition")
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// All entries, sorted ascending.
    pub fn sorted_entries(&self) -> Vec<Rational> {
        let mut entries: Vec<Rational> = self.rows.iter().flatten().cloned().collect();
        entries.sort();
        entries
    }

    /// Row-inserts `z`, returning the grown tableau, the bumping route,
    /// and the new box.  The input tableau is unchanged.
    ///
    /// # Errors
    ///
    /// [`Error::OutOfUnitInterval`] if `z ∉ [0, 1]`.
    pub fn insert(&self, z: &Rational) -> Result<InsertionOutcome> {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        if z < &zero || z > &one {
            return Err(Error::OutOfUnitInterval { value: z.clone() });
        }
        let mut rows = self.rows.clone();
        let mut boxes = Vec::new();
        let mut value = z.clone();
        let mut r0 = 0;
        let new_box = loop {
            if r0 == rows.len() {
                rows.push(vec![value]);
                boxes.push((r0 + 1, 1));
                break (r0 + 1, 1);
            }
            let row = &mut rows[r0];
            // Leftmost entry strictly larger than the incoming value; ties
            // are not bumped.
            let pos = row.partition_point(|entry| entry <= &value);
            if pos == row.len() {
                row.push(value);
                boxes.push((r0 + 1, pos + 1));
                break (r0 + 1, pos + 1);
            }
            boxes.push((r0 + 1, pos + 1));
            std::mem::swap(&mut row[pos], &mut value);
            r0 += 1;
        };
        Ok(InsertionOutcome {
            tableau: Self { rows },
            route: BumpingRoute { boxes },
            new_box,
        })
    }

    /// Russian coordinate `u = column − row` of the box created by
    /// inserting `z`.  Weakly increasing in `z`.
    ///
    /// # Errors
    ///
    /// [`Error::OutOfUnitInterval`] if `z ∉ [0, 1]`.
    pub fn u_ins(&self, z: &Rational) -> Result<i64> {
        let outcome = self.insert(z)?;
        let (row, col) = outcome.new_box;
        Ok(u_of_box(row, col))
    }

    /// The exact insertion threshold
    /// `F_T(u₀) = inf { z ∈ [0, 1] : u_ins(T, z) > u₀ }`, with the
    /// convention `inf ∅ = 1`.
    ///
    /// Since `z ↦ u_ins(T, z)` is weakly increasing, right-continuous, and
    /// jumps only at tableau entries, the threshold is an entry, `0`, or
    /// `1`, and is found by binary search over those candidate points.
    pub fn threshold(&self, u0: &Rational) -> Rational {
        let zero = Rational::from_integer(0.into());
        let mut candidates = self.sorted_entries();
        candidates.dedup();
        if candidates.first() != Some(&zero) {
            candidates.insert(0, zero);
        }
        let exceeds = |z: &Rational| {
            let u = self.u_ins(z).expect("entries lie in [0, 1]");
            Rational::from_integer(u.into()) > *u0
        };
        // Candidates where `u_ins ≤ u₀` form a prefix by monotonicity.
        let split = candidates.partition_point(|z| !exceeds(z));
        match candidates.get(split) {
            Some(z) => z.clone(),
            None => Rational::from_integer(1.into()),
        }
    }

    /// Serializes to the JSON object `{"shape": […], "rows": [[…]]}` with
    /// entries as exact rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let dto = TableauJson {
            shape: self.shape().rows().to_vec(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        };
        serde_json::to_value(dto).expect("tableau serialization cannot fail")
    }

    /// Parses the JSON produced by [`Self::to_json`], revalidating
    /// everything.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidTableau`] for malformed JSON, a shape that does not
    /// match the rows, or entries failing tableau validation.
    pub fn from_json(json: &str) -> Result<Self> {
        let dto: TableauJson = serde_json::from_str(json)
            .map_err(|e| Error::InvalidTableau(format!("malformed JSON: {e}")))?;
        let rows = dto
            .rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let tableau = Self::new(rows)?;
        if tableau.shape().rows() != dto.shape.as_slice() {
            return Err(Error::InvalidTableau(format!(
                "declared shape {:?} does not match rows of shape {:?}",
                dto.shape,
                tableau.shape().rows()
            )));
        }
        Ok(tableau)
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: Vec<usize>,
    rows: Vec<Vec<String>>,
}

/// A standard Young tableau: boxes labeled `1, …, n`, strictly increasing
/// along rows and up columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// Validates and builds a standard tableau from rows (bottom row
    /// first).
    ///
    /// # Errors
    ///
    /// [`Error::InvalidTableau`] unless the labels are exactly `1..=n`,
    /// each row increases strictly, each column increases strictly upward,
    /// and the row lengths form a partition.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lengths.iter().any(|&l| l == 0) || lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!(
                "row lengths {lengths:?} do not form a partition"
            )));
        }
        let n: usize = lengths.iter().sum();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &label in row {
                if label == 0 || label > n || seen[label] {
                    return Err(Error::InvalidTableau(format!(
                        "labels must be 1..={n} without repeats, got {label}"
                    )));
                }
                seen[label] = true;
            }
        }
        for (r0, row) in rows.iter().enumerate() {
            for (c0, &label) in row.iter().enumerate() {
                if c0 + 1 < row.len() && row[c0 + 1] <= label {
                    return Err(Error::InvalidTableau(format!(
                        "row {} fails to increase at column {}",
                        r0 + 1,
                        c0 + 2
                    )));
                }
                if r0 + 1 < rows.len() && rows[r0 + 1].len() > c0 && rows[r0 + 1][c0] <= label {
                    return Err(Error::InvalidTableau(format!(
                        "column {} fails to increase between rows {} and {}",
                        c0 + 1,
                        r0 + 1,
                        r0 + 2
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    /// Rows of labels, bottom row first.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The underlying Young diagram.
    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram::new(self.rows.iter().map(Vec::len).collect())
            .expect("tableau rows always form a partition")
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Robinson–Schensted correspondence: inserts the values of `word` in
/// order, returning the insertion tableau and the standard recording
/// tableau (which records at which step each box appeared).
///
/// # Errors
///
/// [`Error::OutOfUnitInterval`] if any value lies outside `[0, 1]`.
pub fn rsk(word: &[Rational]) -> Result<(PoissonizedTableau, StandardTableau)> {
    let mut insertion = PoissonizedTableau::empty();
    let mut recording: Vec<Vec<usize>> = Vec::new();
    for (step, z) in word.iter().enumerate() {
        let outcome = insertion.insert(z)?;
        insertion = outcome.tableau;
        let (row, col) = outcome.new_box;
        if row > recording.len() {
            recording.push(Vec::new());
        }
        debug_assert_eq!(recording[row - 1].len(), col - 1);
        recording[row - 1].push(step + 1);
    }
    let recording = StandardTableau::new(recording)?;
    Ok((insertion, recording))
}
