//! JSON file formats.
//!
//! ```text
//! mixed state   {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//! pure state    {"dims": [2, 2, 2], "vector": [[re, im], ...]}
//! channel       {"d_in": 3, "d_out": 3, "choi": <mixed state>}
//! ```
//!
//! Matrices are lists of rows; complex numbers are `[re, im]` pairs. Loading
//! validates every invariant of the target type. Numbers are written with 17
//! significant digits so doubles round-trip exactly.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::channels::ChoiChannel;
use crate::error::{Error, Result};
use crate::kernels::{ComplexMatrix, ComplexVector};
use crate::states::{DensityMatrix, PureState};

pub type ComplexEntry = [f64; 2];

pub fn complex_entries(v: &ComplexVector) -> Vec<ComplexEntry> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<ComplexEntry>> {
    m.row_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<ComplexEntry>]) -> Result<ComplexMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "matrix row {i} has {} entries, row 0 has {cols}",
            row.len()
        )));
    }
    Ok(ComplexMatrix::from_fn(n, cols, |i, j| {
        let [re, im] = rows[i][j];
        Complex64::new(re, im)
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<ComplexEntry>>,
}

impl StateJson {
    pub fn into_state(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.dims, matrix_from_rows(&self.matrix)?)
    }
}

impl From<&DensityMatrix> for StateJson {
    fn from(rho: &DensityMatrix) -> Self {
        Self {
            dims: rho.dims().to_vec(),
            matrix: matrix_rows(rho.matrix()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PureJson {
    pub dims: Vec<usize>,
    pub vector: Vec<ComplexEntry>,
}

impl PureJson {
    pub fn into_state(self) -> Result<PureState> {
        let v = ComplexVector::from_iterator(
            self.vector.len(),
            self.vector.iter().map(|&[re, im]| Complex64::new(re, im)),
        );
        PureState::new(self.dims, v)
    }
}

impl From<&PureState> for PureJson {
    fn from(psi: &PureState) -> Self {
        Self {
            dims: psi.dims().to_vec(),
            vector: complex_entries(psi.amplitudes()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelJson {
    pub d_in: usize,
    pub d_out: usize,
    pub choi: StateJson,
}

impl ChannelJson {
    pub fn into_channel(self) -> Result<ChoiChannel> {
        ChoiChannel::from_choi(self.choi.into_state()?, self.d_in, self.d_out)
    }
}

impl From<&ChoiChannel> for ChannelJson {
    fn from(ch: &ChoiChannel) -> Self {
        Self {
            d_in: ch.d_in(),
            d_out: ch.d_out(),
            choi: ch.choi().into(),
        }
    }
}

/// Any of the three file kinds, discriminated by its payload key.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Mixed(DensityMatrix),
    Pure(PureState),
    Channel(ChoiChannel),
}

/// Error while reading an input file; `Parse` covers malformed JSON and schema
/// mismatches, `Invalid` a well-formed file violating a state invariant.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(#[from] Error),
}

pub fn parse_input(text: &str) -> std::result::Result<InputFile, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| InputError::Parse("top level must be a JSON object".into()))?;
    let schema = |e: serde_json::Error| InputError::Parse(e.to_string());
    if obj.contains_key("choi") {
        let ch: ChannelJson = serde_json::from_value(value).map_err(schema)?;
        Ok(InputFile::Channel(ch.into_channel()?))
    } else if obj.contains_key("matrix") {
        let st: StateJson = serde_json::from_value(value).map_err(schema)?;
        Ok(InputFile::Mixed(st.into_state()?))
    } else if obj.contains_key("vector") {
        let st: PureJson = serde_json::from_value(value).map_err(schema)?;
        Ok(InputFile::Pure(st.into_state()?))
    } else {
        Err(InputError::Parse(
            "expected one of the keys \"matrix\", \"vector\" or \"choi\"".into(),
        ))
    }
}

/// Pretty-printed JSON with every float written as `{:.16e}`.
struct SeventeenDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SeventeenDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as indented JSON with 17 significant digits per float.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
