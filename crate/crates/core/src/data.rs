//! Latent-dataset ingestion, a synthetic generator for desk-scale runs,
//! train/test splits, and the CSV / binary file formats.
//!
//! Binary layouts (all integers and floats little-endian):
//!
//! ```text
//! dataset  "QADL" | u32 version=1 | u32 n_rows | u32 dim | u8 has_labels
//!          | n_rows*dim f64 row-major | n_rows u8 labels (if has_labels)
//! matrix   "QADM" | u32 rows | u32 cols | rows*cols f64 row-major
//! ```

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeding;

const DATASET_MAGIC: &[u8; 4] = b"QADL";
const MATRIX_MAGIC: &[u8; 4] = b"QADM";
const DATASET_VERSION: u32 = 1;

/// Dense row-major feature matrix (N rows of dimension `dim`).
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    data: Vec<f64>,
    n_rows: usize,
    dim: usize,
}

impl FeatureMatrix {
    pub fn new(data: Vec<f64>, n_rows: usize, dim: usize) -> Result<Self> {
        if data.len() != n_rows * dim {
            return Err(Error::DimensionMismatch {
                expected: n_rows * dim,
                got: data.len(),
            });
        }
        Ok(Self { data, n_rows, dim })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Validation {
                    row: i,
                    message: format!("row has {} values, expected {dim}", row.len()),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            data,
            n_rows: rows.len(),
            dim,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.n_rows == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Rows selected by index, in order.
    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        FeatureMatrix {
            data,
            n_rows: indices.len(),
            dim: self.dim,
        }
    }
}

/// Where a dataset came from, for provenance in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub dim: usize,
    pub source: String,
    pub seed: Option<u64>,
}

/// Latent event vectors with optional anomaly labels (0 background, 1 anomaly).
///
/// Every feature lies strictly inside (-1, 1); out-of-range inputs are
/// rejected at construction and ingestion, never clamped.
#[derive(Clone, Debug, PartialEq)]
pub struct LatentDataset {
    pub features: FeatureMatrix,
    pub labels: Option<Vec<u8>>,
    pub meta: DatasetMeta,
}

fn check_feature_range(features: &FeatureMatrix) -> Result<()> {
    for (i, row) in features.rows().enumerate() {
        for &v in row {
            if !(v > -1.0 && v < 1.0) {
                return Err(Error::Validation {
                    row: i,
                    message: format!("feature {v} outside the open interval (-1, 1)"),
                });
            }
        }
    }
    Ok(())
}

impl LatentDataset {
    pub fn new(
        features: FeatureMatrix,
        labels: Option<Vec<u8>>,
        meta: DatasetMeta,
    ) -> Result<Self> {
        check_feature_range(&features)?;
        if let Some(labels) = &labels {
            if labels.len() != features.n_rows() {
                return Err(Error::DimensionMismatch {
                    expected: features.n_rows(),
                    got: labels.len(),
                });
            }
            if let Some(pos) = labels.iter().position(|&l| l > 1) {
                return Err(Error::Validation {
                    row: pos,
                    message: format!("label {} is not 0 or 1", labels[pos]),
                });
            }
        }
        Ok(Self {
            features,
            labels,
            meta,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.features.n_rows()
    }

    pub fn dim(&self) -> usize {
        self.features.dim()
    }

    fn indices_with_label(&self, label: u8) -> Vec<usize> {
        match &self.labels {
            Some(labels) => labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == label)
                .map(|(i, _)| i)
                .collect(),
            None => {
                if label == 0 {
                    (0..self.n_rows()).collect()
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// Parameters of the synthetic latent generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub dim: usize,
    pub n_background: usize,
    pub n_anomaly: usize,
    /// Mean shift of the anomaly class along a fixed unit direction, applied
    /// before the tanh squashing.
    pub anomaly_shift: f64,
    /// Scale factor of the anomaly class before the tanh squashing.
    pub anomaly_scale: f64,
    /// Pairwise feature correlation c in [0, 1) of the underlying Gaussian.
    pub correlation: f64,
    pub seed: u64,
}

impl SynthSpec {
    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Config("synthetic dimension must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.correlation) {
            return Err(Error::Config(format!(
                "correlation {} outside [0, 1)",
                self.correlation
            )));
        }
        if !self.anomaly_scale.is_finite() || !self.anomaly_shift.is_finite() {
            return Err(Error::Config("anomaly shift/scale must be finite".into()));
        }
        Ok(())
    }
}

/// Largest f64 strictly below 1; tanh of a large argument rounds to 1.0, which
/// would violate the open-interval invariant.
const OPEN_UNIT_BOUND: f64 = 1.0 - f64::EPSILON;

fn squash(v: f64) -> f64 {
    v.tanh().clamp(-OPEN_UNIT_BOUND, OPEN_UNIT_BOUND)
}

/// Draws background/anomaly latent vectors: z = tanh(g) for background and
/// z = tanh(scale·g + shift·u) for anomalies, with g zero-mean Gaussian of
/// unit variance and pairwise correlation c, and u a fixed unit direction
/// derived from the seed. Deterministic under the seed.
pub fn synth_generate(spec: &SynthSpec) -> Result<LatentDataset> {
    spec.validate()?;
    let dim = spec.dim;

    let mut dir_rng = seeding::rng_for(spec.seed, 0xD12E_C71F);
    let mut direction: Vec<f64> = (0..dim).map(|_| dir_rng.sample(StandardNormal)).collect();
    let dir_norm: f64 = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if dir_norm == 0.0 {
        direction[0] = 1.0;
    } else {
        for d in &mut direction {
            *d /= dir_norm;
        }
    }

    let shared_weight = spec.correlation.sqrt();
    let indep_weight = (1.0 - spec.correlation).sqrt();
    let mut rng = seeding::rng_for(spec.seed, 0x5A3C_9B01);
    let mut draw_gaussian_row = |out: &mut Vec<f64>| {
        let shared: f64 = rng.sample(StandardNormal);
        for _ in 0..dim {
            let eps: f64 = rng.sample(StandardNormal);
            out.push(indep_weight * eps + shared_weight * shared);
        }
    };

    let n_total = spec.n_background + spec.n_anomaly;
    let mut data = Vec::with_capacity(n_total * dim);
    let mut gaussian = Vec::with_capacity(dim);
    for _ in 0..spec.n_background {
        gaussian.clear();
        draw_gaussian_row(&mut gaussian);
        data.extend(gaussian.iter().map(|&g| squash(g)));
    }
    for _ in 0..spec.n_anomaly {
        gaussian.clear();
        draw_gaussian_row(&mut gaussian);
        data.extend(
            gaussian
                .iter()
                .zip(&direction)
                .map(|(&g, &u)| squash(spec.anomaly_scale * g + spec.anomaly_shift * u)),
        );
    }

    let mut labels = vec![0u8; spec.n_background];
    labels.extend(std::iter::repeat_n(1u8, spec.n_anomaly));

    LatentDataset::new(
        FeatureMatrix::new(data, n_total, dim)?,
        Some(labels),
        DatasetMeta {
            dim,
            source: "synth".into(),
            seed: Some(spec.seed),
        },
    )
}

// ---------------------------------------------------------------------------
// CSV format
// ---------------------------------------------------------------------------

pub fn save_csv<W: Write>(dataset: &LatentDataset, w: &mut W) -> Result<()> {
    let dim = dataset.dim();
    let mut header = String::new();
    for i in 0..dim {
        if i > 0 {
            header.push(',');
        }
        let _ = write!(header, "f{i}");
    }
    if dataset.labels.is_some() {
        header.push_str(",label");
    }
    writeln!(w, "{header}")?;
    let mut line = String::new();
    for (i, row) in dataset.features.rows().enumerate() {
        line.clear();
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            let _ = write!(line, "{v}");
        }
        if let Some(labels) = &dataset.labels {
            let _ = write!(line, ",{}", labels[i]);
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn save_csv_path<P: AsRef<Path>>(dataset: &LatentDataset, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save_csv(dataset, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_csv<R: Read>(r: &mut R, source: &str) -> Result<LatentDataset> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty CSV file".into()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_labels = columns.last() == Some(&"label");
    let dim = columns.len() - usize::from(has_labels);
    for (i, col) in columns.iter().take(dim).enumerate() {
        if *col != format!("f{i}") {
            return Err(Error::Format(format!(
                "unexpected CSV header column {i}: {col:?} (expected \"f{i}\")"
            )));
        }
    }

    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut n_rows = 0usize;
    for (row, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != columns.len() {
            return Err(Error::Validation {
                row,
                message: format!("{} cells, expected {}", cells.len(), columns.len()),
            });
        }
        for cell in &cells[..dim] {
            let v: f64 = cell.trim().parse().map_err(|_| Error::Validation {
                row,
                message: format!("non-numeric cell {cell:?}"),
            })?;
            data.push(v);
        }
        if has_labels {
            let l: u8 = cells[dim].trim().parse().map_err(|_| Error::Validation {
                row,
                message: format!("non-integer label {:?}", cells[dim]),
            })?;
            labels.push(l);
        }
        n_rows += 1;
    }

    LatentDataset::new(
        FeatureMatrix::new(data, n_rows, dim)?,
        has_labels.then_some(labels),
        DatasetMeta {
            dim,
            source: source.to_string(),
            seed: None,
        },
    )
}

pub fn load_csv_path<P: AsRef<Path>>(path: P) -> Result<LatentDataset> {
    let mut r = BufReader::new(File::open(&path)?);
    load_csv(&mut r, &path.as_ref().display().to_string())
}

// ---------------------------------------------------------------------------
// Binary formats
// ---------------------------------------------------------------------------

fn read_exact_or_truncated<R: Read>(r: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    r.read_exact(buf)
        .map_err(|_| Error::Format(format!("truncated payload while reading {what}")))
}

fn read_u32<R: Read>(r: &mut R, what: &str) -> Result<u32> {
    let mut buf = [0u8; 4];
    read_exact_or_truncated(r, &mut buf, what)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_f64s<R: Read>(r: &mut R, count: usize, what: &str) -> Result<Vec<f64>> {
    let mut raw = vec![0u8; count * 8];
    read_exact_or_truncated(r, &mut raw, what)?;
    Ok(raw
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

fn check_magic<R: Read>(r: &mut R, expected: &[u8; 4]) -> Result<()> {
    let mut magic = [0u8; 4];
    read_exact_or_truncated(r, &mut magic, "magic")?;
    if &magic != expected {
        return Err(Error::Format(format!(
            "bad magic {:?}, expected {:?}",
            String::from_utf8_lossy(&magic),
            String::from_utf8_lossy(expected)
        )));
    }
    Ok(())
}

pub fn save_binary<W: Write>(dataset: &LatentDataset, w: &mut W) -> Result<()> {
    w.write_all(DATASET_MAGIC)?;
    w.write_all(&DATASET_VERSION.to_le_bytes())?;
    w.write_all(&(dataset.n_rows() as u32).to_le_bytes())?;
    w.write_all(&(dataset.dim() as u32).to_le_bytes())?;
    w.write_all(&[u8::from(dataset.labels.is_some())])?;
    for v in dataset.features.as_slice() {
        w.write_all(&v.to_le_bytes())?;
    }
    if let Some(labels) = &dataset.labels {
        w.write_all(labels)?;
    }
    Ok(())
}

pub fn save_binary_path<P: AsRef<Path>>(dataset: &LatentDataset, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save_binary(dataset, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_binary<R: Read>(r: &mut R, source: &str) -> Result<LatentDataset> {
    check_magic(r, DATASET_MAGIC)?;
    let version = read_u32(r, "version")?;
    if version != DATASET_VERSION {
        return Err(Error::Format(format!(
            "unsupported dataset version {version}, expected {DATASET_VERSION}"
        )));
    }
    let n_rows = read_u32(r, "row count")? as usize;
    let dim = read_u32(r, "dimension")? as usize;
    let mut flag = [0u8; 1];
    read_exact_or_truncated(r, &mut flag, "label flag")?;
    let data = read_f64s(r, n_rows * dim, "features")?;
    let labels = if flag[0] != 0 {
        let mut labels = vec![0u8; n_rows];
        read_exact_or_truncated(r, &mut labels, "labels")?;
        Some(labels)
    } else {
        None
    };
    LatentDataset::new(
        FeatureMatrix::new(data, n_rows, dim)?,
        labels,
        DatasetMeta {
            dim,
            source: source.to_string(),
            seed: None,
        },
    )
}

pub fn load_binary_path<P: AsRef<Path>>(path: P) -> Result<LatentDataset> {
    let mut r = BufReader::new(File::open(&path)?);
    load_binary(&mut r, &path.as_ref().display().to_string())
}

/// Loads a dataset, choosing the format from the file extension (.csv is CSV,
/// anything else the binary layout).
pub fn load_dataset_path<P: AsRef<Path>>(path: P) -> Result<LatentDataset> {
    if path.as_ref().extension().is_some_and(|e| e == "csv") {
        load_csv_path(path)
    } else {
        load_binary_path(path)
    }
}

pub fn save_matrix<W: Write>(matrix: &DMatrix<f64>, w: &mut W) -> Result<()> {
    w.write_all(MATRIX_MAGIC)?;
    w.write_all(&(matrix.nrows() as u32).to_le_bytes())?;
    w.write_all(&(matrix.ncols() as u32).to_le_bytes())?;
    for i in 0..matrix.nrows() {
        for j in 0..matrix.ncols() {
            w.write_all(&matrix[(i, j)].to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn save_matrix_path<P: AsRef<Path>>(matrix: &DMatrix<f64>, path: P) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save_matrix(matrix, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_matrix<R: Read>(r: &mut R) -> Result<DMatrix<f64>> {
    check_magic(r, MATRIX_MAGIC)?;
    let rows = read_u32(r, "rows")? as usize;
    let cols = read_u32(r, "cols")? as usize;
    let data = read_f64s(r, rows * cols, "matrix payload")?;
    Ok(DMatrix::from_row_slice(rows, cols, &data))
}

pub fn load_matrix_path<P: AsRef<Path>>(path: P) -> Result<DMatrix<f64>> {
    let mut r = BufReader::new(File::open(path)?);
    load_matrix(&mut r)
}

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

fn shuffled(mut indices: Vec<usize>, seed: u64, stream: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rng = seeding::rng_for(seed, stream);
    indices.shuffle(&mut rng);
    indices
}

/// Splits into a background-only training set of `n_train` rows and a
/// balanced labeled test set of `n_test` rows (half background, half anomaly),
/// disjoint from training. Deterministic under the seed.
pub fn split(
    dataset: &LatentDataset,
    n_train: usize,
    n_test: usize,
    seed: u64,
) -> Result<(LatentDataset, LatentDataset)> {
    if n_test % 2 != 0 {
        return Err(Error::Config(format!(
            "test size {n_test} must be even for a balanced split"
        )));
    }
    let background = shuffled(dataset.indices_with_label(0), seed, 0);
    let anomaly = shuffled(dataset.indices_with_label(1), seed, 1);
    let per_class = n_test / 2;
    if background.len() < n_train + per_class {
        return Err(Error::InsufficientData(format!(
            "need {} background rows, have {}",
            n_train + per_class,
            background.len()
        )));
    }
    if anomaly.len() < per_class {
        return Err(Error::InsufficientData(format!(
            "need {per_class} anomaly rows, have {}",
            anomaly.len()
        )));
    }

    let train_idx = &background[..n_train];
    let test_bg = &background[n_train..n_train + per_class];
    let test_anom = &anomaly[..per_class];

    let train = LatentDataset::new(
        dataset.features.select(train_idx),
        None,
        DatasetMeta {
            dim: dataset.dim(),
            source: format!("{}#train", dataset.meta.source),
            seed: Some(seed),
        },
    )?;

    let mut test_idx: Vec<usize> = test_bg.to_vec();
    test_idx.extend_from_slice(test_anom);
    let mut test_labels = vec![0u8; per_class];
    test_labels.extend(std::iter::repeat_n(1u8, per_class));
    let test = LatentDataset::new(
        dataset.features.select(&test_idx),
        Some(test_labels),
        DatasetMeta {
            dim: dataset.dim(),
            source: format!("{}#test", dataset.meta.source),
            seed: Some(seed),
        },
    )?;

    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SynthSpec {
        SynthSpec {
            dim: 4,
            n_background: 40,
            n_anomaly: 20,
            anomaly_shift: 2.0,
            anomaly_scale: 1.5,
            correlation: 0.1,
            seed: 7,
        }
    }

    #[test]
    fn generator_is_deterministic_and_in_range() {
        let a = synth_generate(&small_spec()).unwrap();
        let b = synth_generate(&small_spec()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_rows(), 60);
        for row in a.features.rows() {
            for &v in row {
                assert!(v > -1.0 && v < 1.0);
            }
        }
        let labels = a.labels.as_ref().unwrap();
        assert_eq!(labels.iter().filter(|&&l| l == 1).count(), 20);
    }

    #[test]
    fn generator_survives_extreme_shift() {
        let mut spec = small_spec();
        spec.anomaly_shift = 100.0;
        let d = synth_generate(&spec).unwrap();
        for row in d.features.rows() {
            for &v in row {
                assert!(v > -1.0 && v < 1.0);
            }
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let d = synth_generate(&small_spec()).unwrap();
        let mut buf = Vec::new();
        save_csv(&d, &mut buf).unwrap();
        let back = load_csv(&mut buf.as_slice(), "mem").unwrap();
        assert_eq!(d.features, back.features);
        assert_eq!(d.labels, back.labels);
    }

    #[test]
    fn csv_one_row_and_validation() {
        let text = "f0,f1\n0.5,-0.5\n";
        let d = load_csv(&mut text.as_bytes(), "mem").unwrap();
        assert_eq!(d.n_rows(), 1);
        assert_eq!(d.dim(), 2);
        assert!(d.labels.is_none());

        let boundary = "f0,f1\n0.5,1.0\n";
        match load_csv(&mut boundary.as_bytes(), "mem") {
            Err(Error::Validation { row: 0, .. }) => {}
            other => panic!("expected validation error, got {other:?}"),
        }

        let ragged = "f0,f1\n0.5\n";
        assert!(matches!(
            load_csv(&mut ragged.as_bytes(), "mem"),
            Err(Error::Validation { row: 0, .. })
        ));

        let text = "f0,f1\n0.5,x\n";
        assert!(matches!(
            load_csv(&mut text.as_bytes(), "mem"),
            Err(Error::Validation { row: 0, .. })
        ));
    }

    #[test]
    fn binary_round_trip_and_header_size() {
        let d = synth_generate(&small_spec()).unwrap();
        let mut buf = Vec::new();
        save_binary(&d, &mut buf).unwrap();
        let back = load_binary(&mut buf.as_slice(), "mem").unwrap();
        assert_eq!(d.features, back.features);
        assert_eq!(d.labels, back.labels);

        let empty = LatentDataset::new(
            FeatureMatrix::new(Vec::new(), 0, 3).unwrap(),
            None,
            DatasetMeta {
                dim: 3,
                source: "mem".into(),
                seed: None,
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        save_binary(&empty, &mut buf).unwrap();
        assert_eq!(buf.len(), 17);
    }

    #[test]
    fn binary_errors_name_the_problem() {
        let mut buf = Vec::new();
        save_binary(&synth_generate(&small_spec()).unwrap(), &mut buf).unwrap();

        let mut corrupted = buf.clone();
        corrupted[..4].copy_from_slice(b"NOPE");
        match load_binary(&mut corrupted.as_slice(), "mem") {
            Err(Error::Format(msg)) => assert!(msg.contains("NOPE"), "{msg}"),
            other => panic!("expected format error, got {other:?}"),
        }

        let truncated = &buf[..buf.len() / 2];
        assert!(matches!(
            load_binary(&mut &truncated[..], "mem"),
            Err(Error::Format(_))
        ));

        let mut wrong_version = buf.clone();
        wrong_version[4..8].copy_from_slice(&9u32.to_le_bytes());
        assert!(matches!(
            load_binary(&mut wrong_version.as_slice(), "mem"),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn matrix_round_trip() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.5, -0.25]);
        let mut buf = Vec::new();
        save_matrix(&m, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 4 + 6 * 8);
        let back = load_matrix(&mut buf.as_slice()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn split_is_balanced_disjoint_and_deterministic() {
        let d = synth_generate(&small_spec()).unwrap();
        let (train, test) = split(&d, 20, 10, 5).unwrap();
        assert_eq!(train.n_rows(), 20);
        assert_eq!(test.n_rows(), 10);
        let labels = test.labels.as_ref().unwrap();
        assert_eq!(labels.iter().filter(|&&l| l == 0).count(), 5);
        assert_eq!(labels.iter().filter(|&&l| l == 1).count(), 5);

        let (train2, test2) = split(&d, 20, 10, 5).unwrap();
        assert_eq!(train, train2);
        assert_eq!(test, test2);

        // more anomalies than available
        assert!(matches!(
            split(&d, 20, 60, 5),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(split(&d, 20, 9, 5), Err(Error::Config(_))));
    }

    #[test]
    fn split_train_test_rows_are_disjoint() {
        let d = synth_generate(&small_spec()).unwrap();
        let (train, test) = split(&d, 25, 20, 11).unwrap();
        for trow in train.features.rows() {
            for srow in test.features.rows() {
                assert_ne!(trow, srow);
            }
        }
    }
}
