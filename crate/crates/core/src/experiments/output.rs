use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Result;

/// An experiment result that can be persisted as CSV plus a JSON sidecar.
pub trait Experiment {
    /// File stem, e.g. `fig2`.
    fn name(&self) -> &'static str;
    fn write_csv<W: Write>(&self, out: W) -> Result<()>;
    /// Spec, seeds, tolerances and warnings; must be deterministic.
    fn metadata(&self) -> serde_json::Value;
}

/// Writes `<dir>/<name>.csv` and `<dir>/<name>.json`. The sidecar gains a
/// `generated_unix_s` timestamp, the only non-reproducible field.
pub fn write_experiment<E: Experiment>(exp: &E, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{}.csv", exp.name()));
    let json_path = dir.join(format!("{}.json", exp.name()));

    let mut csv_out = BufWriter::new(File::create(&csv_path)?);
    exp.write_csv(&mut csv_out)?;
    csv_out.flush()?;

    let mut meta = exp.metadata();
    let stamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    if let Some(obj) = meta.as_object_mut() {
        obj.insert("generated_unix_s".into(), stamp.into());
    }
    let mut json_out = BufWriter::new(File::create(&json_path)?);
    serde_json::to_writer_pretty(&mut json_out, &meta)?;
    json_out.write_all(b"\n")?;
    json_out.flush()?;
    Ok((csv_path, json_path))
}
