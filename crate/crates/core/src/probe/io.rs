//! Header-plus-binary files: one UTF-8 JSON line, then fixed-size
//! little-endian records.
//!
//! Embedding records are `id: u64, label: u8, vector: [f32; dim]`.
//! Checkpoints hold `w1, b1, w2, b2` as `f64`, in that order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::ProbeModel;
use super::{Activation, EmbeddingRecord, OUTPUT_DIM};
use crate::error::{Error, Result};

pub const EMBEDDING_DTYPE: &str = "f32le";
pub const CHECKPOINT_DTYPE: &str = "f64le";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingHeader {
    pub dim: usize,
    pub count: usize,
    pub dtype: String,
    pub source_model: String,
    pub dataset: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSet {
    pub header: EmbeddingHeader,
    pub records: Vec<EmbeddingRecord>,
}

impl EmbeddingSet {
    /// Wraps `records`, deriving `dim` and `count`.
    pub fn new(source_model: &str, dataset: &str, records: Vec<EmbeddingRecord>) -> Result<Self> {
        let dim = super::check_records(&records, "embedding set")?;
        Ok(EmbeddingSet {
            header: EmbeddingHeader {
                dim,
                count: records.len(),
                dtype: EMBEDDING_DTYPE.to_string(),
                source_model: source_model.to_string(),
                dataset: dataset.to_string(),
            },
            records,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub dtype: String,
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub output_dim: usize,
    pub activation: Activation,
    pub epochs_run: usize,
    pub best_epoch: usize,
    pub seed: u64,
}

fn read_header<T: for<'de> Deserialize<'de>>(reader: &mut impl BufRead, path: &Path) -> Result<T> {
    let mut line = Vec::new();
    reader.read_until(b'\n', &mut line).map_err(|e| Error::io(path, e))?;
    if line.last() != Some(&b'\n') {
        return Err(Error::format(path, 1, "missing header line"));
    }
    let text = std::str::from_utf8(&line[..line.len() - 1])
        .map_err(|_| Error::format(path, 1, "header is not UTF-8"))?;
    serde_json::from_str(text).map_err(|e| Error::format(path, 1, format!("bad header: {e}")))
}

fn write_header<T: Serialize>(writer: &mut impl Write, header: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *writer, header)?;
    writer.write_all(b"\n")
}

fn expect_eof(reader: &mut impl Read, path: &Path, record: usize) -> Result<()> {
    let mut extra = [0u8; 1];
    match reader.read(&mut extra).map_err(|e| Error::io(path, e))? {
        0 => Ok(()),
        _ => Err(Error::Corrupt {
            path: path.into(),
            record,
            message: "trailing bytes after the declared records".into(),
        }),
    }
}

/// Writes `set`. The header's `dim` and `count` must describe the records.
pub fn write_embeddings(path: &Path, set: &EmbeddingSet) -> Result<()> {
    let h = &set.header;
    if h.dtype != EMBEDDING_DTYPE || h.count != set.records.len() {
        return Err(Error::InvalidConfig(format!(
            "header declares {} {} records, set holds {}",
            h.count,
            h.dtype,
            set.records.len()
        )));
    }
    if let Some(r) = set.records.iter().find(|r| r.vector.len() != h.dim) {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            found: r.vector.len(),
        });
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    write_header(&mut w, h).map_err(io)?;
    for r in &set.records {
        w.write_all(&r.id.to_le_bytes()).map_err(io)?;
        w.write_all(&[r.label]).map_err(io)?;
        for v in &r.vector {
            w.write_all(&v.to_le_bytes()).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

/// Reads an embedding file, validating the header, every label and every
/// component, and the exact file length.
pub fn read_embeddings(path: &Path) -> Result<EmbeddingSet> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(file);
    let header: EmbeddingHeader = read_header(&mut r, path)?;
    if header.dtype != EMBEDDING_DTYPE {
        return Err(Error::format(
            path,
            1,
            format!("dtype {:?} is not {EMBEDDING_DTYPE:?}", header.dtype),
        ));
    }
    if header.dim == 0 {
        return Err(Error::format(path, 1, "dim must be positive"));
    }
    let corrupt = |record: usize, message: String| Error::Corrupt {
        path: path.into(),
        record,
        message,
    };
    let mut buf = vec![0u8; 9 + 4 * header.dim];
    let mut records = Vec::with_capacity(header.count.min(1 << 20));
    for i in 0..header.count {
        r.read_exact(&mut buf).map_err(|e| match e.kind() {
            std::io::ErrorKind::UnexpectedEof => corrupt(
                i,
                format!("file ends early: header declares {} records", header.count),
            ),
            _ => Error::io(path, e),
        })?;
        let id = u64::from_le_bytes(buf[..8].try_into().unwrap());
        let label = buf[8];
        if label > 1 {
            return Err(corrupt(i, format!("label {label} is not 0 or 1")));
        }
        let vector: Vec<f32> = buf[9..]
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(corrupt(i, "non-finite component".into()));
        }
        records.push(EmbeddingRecord { id, label, vector });
    }
    expect_eof(&mut r, path, header.count)?;
    Ok(EmbeddingSet { header, records })
}

pub fn write_checkpoint(path: &Path, model: &ProbeModel, header: &CheckpointHeader) -> Result<()> {
    if (header.input_dim, header.hidden_dim, header.output_dim, header.activation)
        != (model.input_dim, model.hidden_dim, OUTPUT_DIM, model.activation)
        || header.dtype != CHECKPOINT_DTYPE
    {
        return Err(Error::InvalidConfig("checkpoint header does not describe the model".into()));
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    write_header(&mut w, header).map_err(io)?;
    for t in model.tensors() {
        for p in t {
            w.write_all(&p.to_le_bytes()).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

pub fn read_checkpoint(path: &Path) -> Result<(ProbeModel, CheckpointHeader)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(file);
    let header: CheckpointHeader = read_header(&mut r, path)?;
    if header.dtype != CHECKPOINT_DTYPE {
        return Err(Error::format(
            path,
            1,
            format!("dtype {:?} is not {CHECKPOINT_DTYPE:?}", header.dtype),
        ));
    }
    if header.output_dim != OUTPUT_DIM || header.input_dim == 0 || header.hidden_dim == 0 {
        return Err(Error::format(path, 1, "unsupported layer sizes"));
    }
    let mut model = ProbeModel::zeros(header.input_dim, header.hidden_dim, header.activation);
    let mut buf = [0u8; 8];
    for (k, t) in model.tensors_mut().into_iter().enumerate() {
        for p in t.iter_mut() {
            r.read_exact(&mut buf).map_err(|e| match e.kind() {
                std::io::ErrorKind::UnexpectedEof => Error::Corrupt {
                    path: path.into(),
                    record: k,
                    message: "file ends inside the parameters".into(),
                },
                _ => Error::io(path, e),
            })?;
            *p = f64::from_le_bytes(buf);
        }
    }
    expect_eof(&mut r, path, 4)?;
    if !model.is_finite() {
        return Err(Error::NonFinite(format!("{}: checkpoint parameters", path.display())));
    }
    Ok((model, header))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EmbeddingSet {
        let records = (0..5)
            .map(|i| EmbeddingRecord {
                id: 100 + i,
                label: (i % 2) as u8,
                vector: vec![i as f32, -0.5, f32::MIN_POSITIVE],
            })
            .collect();
        EmbeddingSet::new("toy", "en_1_bare_train", records).unwrap()
    }

    #[test]
    fn byte_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.bin");
        let set = EmbeddingSet::new(
            "m",
            "d",
            vec![EmbeddingRecord {
                id: 258,
                label: 1,
                vector: vec![1.0, -2.0],
            }],
        )
        .unwrap();
        write_embeddings(&path, &set).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        let header = br#"{"dim":2,"count":1,"dtype":"f32le","source_model":"m","dataset":"d"}"#;
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes[header.len()], b'\n');
        let body = &bytes[header.len() + 1..];
        assert_eq!(
            body,
            [2, 1, 0, 0, 0, 0, 0, 0, 1, 0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0xc0]
        );
    }

    #[test]
    fn embeddings_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.bin");
        let set = sample();
        write_embeddings(&path, &set).unwrap();
        assert_eq!(read_embeddings(&path).unwrap(), set);
    }

    #[test]
    fn damaged_embedding_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.bin");
        write_embeddings(&path, &sample()).unwrap();
        let good = std::fs::read(&path).unwrap();
        let body = good.iter().position(|&b| b == b'\n').unwrap() + 1;

        std::fs::write(&path, &good[..good.len() - 1]).unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Corrupt { record: 4, .. })));

        let mut extra = good.clone();
        extra.push(0);
        std::fs::write(&path, &extra).unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Corrupt { record: 5, .. })));

        let mut bad_label = good.clone();
        bad_label[body + 8] = 2;
        std::fs::write(&path, &bad_label).unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Corrupt { record: 0, .. })));

        let mut nan = good.clone();
        nan[body + 9..body + 13].copy_from_slice(&f32::NAN.to_le_bytes());
        std::fs::write(&path, &nan).unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Corrupt { record: 0, .. })));

        let text = String::from_utf8_lossy(&good[..body]).replace("f32le", "f64le");
        let mut wrong_dtype = text.into_bytes();
        wrong_dtype.extend_from_slice(&good[body..]);
        std::fs::write(&path, &wrong_dtype).unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Format { line: 1, .. })));

        std::fs::write(&path, b"not json\n").unwrap();
        assert!(matches!(read_embeddings(&path), Err(Error::Format { line: 1, .. })));
    }

    #[test]
    fn inconsistent_set_is_not_written() {
        let dir = tempfile::tempdir().unwrap();
        let mut set = sample();
        set.header.count = 9;
        assert!(write_embeddings(&dir.path().join("e.bin"), &set).is_err());
        let mut set = sample();
        set.header.dim = 4;
        assert!(write_embeddings(&dir.path().join("e.bin"), &set).is_err());
    }

    #[test]
    fn checkpoint_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let model = ProbeModel::init(7, 5, Activation::Tanh, &mut rng);
        let header = CheckpointHeader {
            dtype: CHECKPOINT_DTYPE.into(),
            input_dim: 7,
            hidden_dim: 5,
            output_dim: 2,
            activation: Activation::Tanh,
            epochs_run: 20,
            best_epoch: 13,
            seed: 3,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.bin");
        write_checkpoint(&path, &model, &header).unwrap();
        let (back, h) = read_checkpoint(&path).unwrap();
        assert_eq!(back, model);
        assert_eq!(h, header);

        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        assert!(matches!(read_checkpoint(&path), Err(Error::Corrupt { .. })));

        let wrong = CheckpointHeader {
            hidden_dim: 6,
            ..header
        };
        assert!(write_checkpoint(&path, &model, &wrong).is_err());
    }
}
