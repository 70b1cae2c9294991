//! The five subcommands. Every command writes its artifacts under `--out`,
//! embeds the fully resolved config and the crate version in each JSON
//! output, and prints a short summary JSON to stdout. Wall-clock timings go
//! to stderr so reruns stay byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use qad_core::characterize::{
    expressibility, kernel_variance_sampled, sample_fidelity_histogram,
    write_characterization_csv, CharacterizationRecord, ParameterSampler,
    entanglement_capability_with_error,
};
use qad_core::data::{save_binary_path, save_csv_path, save_matrix_path, split, LatentDataset};
use qad_core::error::{Error, Result};
use qad_core::metrics::{kfold_eval, kfold_roc_curves, write_roc_csv, EvalReport};

use crate::args;
use crate::pipeline::{
    load_source, scores_by_label, train_model, write_json, TrainSettings, TrainedModel,
};
use crate::runcfg::{
    self, load_file_config, parse_depth_grid, parse_min_mode, parse_usize_grid, DataSource,
    EncodingSettings, ModelKind, VERSION,
};

fn ensure_out_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path)?;
    Ok(())
}

fn print_summary<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Format(format!("JSON serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct GenerateConfig {
    synth: qad_core::data::SynthSpec,
    format: String,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct GenerateReport {
    version: String,
    command: String,
    config: GenerateConfig,
    background_file: PathBuf,
    anomaly_file: PathBuf,
    n_background: usize,
    n_anomaly: usize,
}

pub fn cmd_generate(args: &args::GenerateArgs) -> Result<()> {
    let file = load_file_config(args.config.as_deref())?;
    let spec = qad_core::data::SynthSpec {
        dim: args.dim.or(file.dim).unwrap_or(8),
        n_background: args.n_background.or(file.n_background).unwrap_or(20_000),
        n_anomaly: args.n_anomaly.or(file.n_anomaly).unwrap_or(10_000),
        anomaly_shift: args.shift.or(file.shift).unwrap_or(2.0),
        anomaly_scale: args.scale.or(file.scale).unwrap_or(2.5),
        correlation: args.correlation.or(file.correlation).unwrap_or(0.95),
        seed: args.seed.or(file.seed).unwrap_or(7),
    };
    let format = args
        .format
        .clone()
        .or(file.format)
        .unwrap_or_else(|| "binary".into());
    if format != "binary" && format != "csv" {
        return Err(Error::Config(format!(
            "unknown format {format:?} (expected binary or csv)"
        )));
    }
    ensure_out_dir(&args.out)?;

    let started = Instant::now();
    let dataset = qad_core::data::synth_generate(&spec)?;
    let labels = dataset.labels.as_ref().expect("generator labels");
    let bg_idx: Vec<usize> = (0..dataset.n_rows()).filter(|&i| labels[i] == 0).collect();
    let an_idx: Vec<usize> = (0..dataset.n_rows()).filter(|&i| labels[i] == 1).collect();
    let subset = |idx: &[usize], tag: &str| -> Result<LatentDataset> {
        LatentDataset::new(
            dataset.features.select(idx),
            None,
            qad_core::data::DatasetMeta {
                dim: spec.dim,
                source: format!("synth#{tag}"),
                seed: Some(spec.seed),
            },
        )
    };
    let background = subset(&bg_idx, "background")?;
    let anomaly = subset(&an_idx, "anomaly")?;

    let ext = if format == "csv" { "csv" } else { "qadl" };
    let background_file = args.out.join(format!("background.{ext}"));
    let anomaly_file = args.out.join(format!("anomaly.{ext}"));
    if format == "csv" {
        save_csv_path(&background, &background_file)?;
        save_csv_path(&anomaly, &anomaly_file)?;
    } else {
        save_binary_path(&background, &background_file)?;
        save_binary_path(&anomaly, &anomaly_file)?;
    }

    let report = GenerateReport {
        version: VERSION.into(),
        command: "generate".into(),
        config: GenerateConfig {
            synth: spec.clone(),
            format,
            out: args.out.clone(),
        },
        background_file,
        anomaly_file,
        n_background: background.n_rows(),
        n_anomaly: anomaly.n_rows(),
    };
    write_json(&report, &args.out.join("manifest.json"))?;
    eprintln!("[qad] generate finished in {:.2}s", started.elapsed().as_secs_f64());
    print_summary(&report)
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct TrainConfig {
    model: ModelKind,
    data: DataSource,
    encoding: EncodingSettings,
    n_train: usize,
    n_test: usize,
    nu: f64,
    gamma: Option<f64>,
    k: usize,
    epsilon: f64,
    min_mode: String,
    shots: u64,
    seed: u64,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct TrainReport {
    version: String,
    command: String,
    config: TrainConfig,
    model_file: PathBuf,
    test_file: Option<PathBuf>,
    gram_file: Option<PathBuf>,
    details: crate::pipeline::TrainedDetails,
}

pub fn cmd_train(args: &args::TrainArgs) -> Result<()> {
    let file = load_file_config(args.config.as_deref())?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    runcfg::init_workers(args.workers.or(file.workers).unwrap_or(0));

    let kind = ModelKind::parse(
        &args
            .model
            .clone()
            .or(file.model.clone())
            .ok_or_else(|| Error::Config("no model kind given (--model)".into()))?,
    )?;
    let source = runcfg::resolve_data_source(&args.data, &file, seed);
    let encoding = runcfg::resolve_encoding(&args.encoding, &file);
    let min_mode_str = args
        .min_mode
        .clone()
        .or(file.min_mode.clone())
        .unwrap_or_else(|| "deterministic".into());

    let config = TrainConfig {
        model: kind,
        data: source.clone(),
        encoding,
        n_train: args.n_train.or(file.n_train).unwrap_or(600),
        n_test: args.n_test.or(file.n_test).unwrap_or(10_000),
        nu: args.nu.or(file.nu).unwrap_or(0.01),
        gamma: args.gamma.or(file.gamma),
        k: args.k.or(file.k).unwrap_or(2),
        epsilon: args.epsilon.or(file.epsilon).unwrap_or(1e-4),
        min_mode: min_mode_str.clone(),
        shots: args.shots.or(file.shots).unwrap_or(0),
        seed,
        out: args.out.clone(),
    };
    ensure_out_dir(&args.out)?;

    let started = Instant::now();
    let dataset = load_source(&source)?;
    let (train_set, test_set) = split(&dataset, config.n_train, config.n_test, seed)?;

    let settings = TrainSettings {
        kind,
        encoding,
        nu: config.nu,
        gamma: config.gamma,
        k: config.k,
        epsilon: config.epsilon,
        min_mode: parse_min_mode(&min_mode_str)?,
        shots: config.shots,
        seed,
    };
    let outcome = train_model(&train_set.features, &settings)?;

    let model_file = args.out.join("model.txt");
    outcome.model.save(&model_file)?;

    let test_file = if config.n_test > 0 {
        let path = args.out.join("test-set.qadl");
        save_binary_path(&test_set, &path)?;
        Some(path)
    } else {
        None
    };
    let gram_file = match (&outcome.gram, args.save_gram) {
        (Some(gram), true) => {
            let path = args.out.join("gram.qadm");
            save_matrix_path(&gram.values, &path)?;
            Some(path)
        }
        _ => None,
    };

    let report = TrainReport {
        version: VERSION.into(),
        command: "train".into(),
        config,
        model_file,
        test_file,
        gram_file,
        details: outcome.details,
    };
    write_json(&report, &args.out.join("train-report.json"))?;
    eprintln!("[qad] train finished in {:.2}s", started.elapsed().as_secs_f64());
    print_summary(&report)
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct EvaluateConfig {
    model: PathBuf,
    test: PathBuf,
    folds: usize,
    shots: u64,
    seed: u64,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct EvaluateReport {
    version: String,
    command: String,
    config: EvaluateConfig,
    model_kind: String,
    n_test_background: usize,
    n_test_signal: usize,
    report: EvalReport,
    roc_files: Vec<PathBuf>,
}

pub fn cmd_evaluate(args: &args::EvaluateArgs) -> Result<()> {
    let file = load_file_config(args.config.as_deref())?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    runcfg::init_workers(args.workers.or(file.workers).unwrap_or(0));
    let config = EvaluateConfig {
        model: args.model.clone(),
        test: args.test.clone(),
        folds: args.folds.or(file.folds).unwrap_or(5),
        shots: args.shots.or(file.shots).unwrap_or(0),
        seed,
        out: args.out.clone(),
    };
    ensure_out_dir(&args.out)?;

    let started = Instant::now();
    let model = TrainedModel::load(&args.model)?;
    let test_set = qad_core::data::load_dataset_path(&args.test)?;
    let scores = model.score_rows(&test_set.features, config.shots, seed ^ 0x7E57)?;
    let (background, signal) = scores_by_label(&test_set, &scores)?;
    if background.is_empty() || signal.is_empty() {
        return Err(Error::InsufficientData(
            "test set must contain both background and anomaly rows".into(),
        ));
    }

    let report = kfold_eval(&background, &signal, config.folds, seed)?;
    let curves = kfold_roc_curves(&background, &signal, config.folds, seed)?;
    let mut roc_files = Vec::with_capacity(curves.len());
    for (i, curve) in curves.iter().enumerate() {
        let path = args.out.join(format!("roc-fold-{i}.csv"));
        let mut w = BufWriter::new(File::create(&path)?);
        write_roc_csv(curve, &mut w)?;
        w.flush()?;
        roc_files.push(path);
    }

    let out = EvaluateReport {
        version: VERSION.into(),
        command: "evaluate".into(),
        config,
        model_kind: model.kind_tag().into(),
        n_test_background: background.len(),
        n_test_signal: signal.len(),
        report,
        roc_files,
    };
    write_json(&out, &args.out.join("eval-report.json"))?;
    eprintln!("[qad] evaluate finished in {:.2}s", started.elapsed().as_secs_f64());
    print_summary(&out)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct SweepConfig {
    data: DataSource,
    l_values: String,
    n_qubits_values: String,
    angle_scale: f64,
    n_train: usize,
    n_test: usize,
    folds: usize,
    nu: f64,
    gamma: Option<f64>,
    shots: u64,
    seed: u64,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct SweepPointReport {
    version: String,
    command: String,
    label: String,
    n_qubits: usize,
    quantum: EvalReport,
    classical: EvalReport,
    delta_qc_06: Vec<f64>,
    delta_qc_08: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    version: String,
    command: String,
    config: SweepConfig,
    csv_file: PathBuf,
    point_files: Vec<PathBuf>,
}

fn fold_ratios(q: &[Option<f64>], c: &[Option<f64>]) -> Vec<f64> {
    q.iter()
        .zip(c)
        .map(|(q, c)| match (q, c) {
            (Some(q), Some(c)) => q / c,
            (None, Some(_)) => f64::INFINITY,
            _ => f64::NAN,
        })
        .collect()
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".into(), |v| v.to_string())
}

pub fn cmd_sweep(args: &args::SweepArgs) -> Result<()> {
    let file = load_file_config(args.config.as_deref())?;
    let seed = args.seed.or(file.seed).unwrap_or(42);
    runcfg::init_workers(args.workers.or(file.workers).unwrap_or(0));

    let config = SweepConfig {
        data: runcfg::resolve_data_source(&args.data, &file, seed),
        l_values: args
            .l_values
            .clone()
            .or(file.l_values.clone())
            .unwrap_or_else(|| "NE,1,2,3".into()),
        n_qubits_values: args
            .n_qubits_values
            .clone()
            .or(file.n_qubits_values.clone())
            .unwrap_or_else(|| "4".into()),
        angle_scale: args
            .angle_scale
            .or(file.angle_scale)
            .unwrap_or(std::f64::consts::PI),
        n_train: args.n_train.or(file.n_train).unwrap_or(600),
        n_test: args.n_test.or(file.n_test).unwrap_or(10_000),
        folds: args.folds.or(file.folds).unwrap_or(5),
        nu: args.nu.or(file.nu).unwrap_or(0.01),
        gamma: args.gamma.or(file.gamma),
        shots: args.shots.or(file.shots).unwrap_or(0),
        seed,
        out: args.out.clone(),
    };
    ensure_out_dir(&args.out)?;
    let depth_grid = parse_depth_grid(&config.l_values)?;
    let qubit_grid = parse_usize_grid(&config.n_qubits_values)?;

    let started = Instant::now();
    let mut csv_rows: Vec<String> = Vec::new();
    let mut point_files = Vec::new();

    for &n_qubits in &qubit_grid {
        let dim = 2 * n_qubits;
        // Synthetic sources regenerate at the matching dimension so the grid
        // can span qubit counts; file-based sources must already match.
        let source = match &config.data {
            DataSource::Synth(spec) => {
                DataSource::Synth(qad_core::data::SynthSpec { dim, ..spec.clone() })
            }
            other => other.clone(),
        };
        let dataset = load_source(&source)?;
        if dataset.dim() != dim {
            return Err(Error::Config(format!(
                "dataset dimension {} does not match 2*n_qubits = {dim}",
                dataset.dim()
            )));
        }
        let (train_set, test_set) = split(&dataset, config.n_train, config.n_test, seed)?;

        // The classical benchmark sees the same split at every depth.
        let classical_settings = TrainSettings {
            kind: ModelKind::OcsvmRbf,
            encoding: EncodingSettings {
                n_qubits: Some(n_qubits),
                depth: 0,
                entanglement: false,
                angle_scale: config.angle_scale,
            },
            nu: config.nu,
            gamma: config.gamma,
            k: 2,
            epsilon: 1e-4,
            min_mode: qad_core::qcluster::MinimizationMode::Deterministic,
            shots: 0,
            seed,
        };
        let classical = train_model(&train_set.features, &classical_settings)?;
        let classical_scores =
            classical
                .model
                .score_rows(&test_set.features, 0, seed ^ 0xC1A5)?;
        let (cbg, csig) = scores_by_label(&test_set, &classical_scores)?;
        let classical_report = kfold_eval(&cbg, &csig, config.folds, seed)?;

        for depth_spec in &depth_grid {
            let (depth, entanglement) = depth_spec.depth_and_entanglement();
            let quantum_settings = TrainSettings {
                kind: ModelKind::Ocsvm,
                encoding: EncodingSettings {
                    n_qubits: Some(n_qubits),
                    depth,
                    entanglement,
                    angle_scale: config.angle_scale,
                },
                nu: config.nu,
                gamma: None,
                k: 2,
                epsilon: 1e-4,
                min_mode: qad_core::qcluster::MinimizationMode::Deterministic,
                shots: config.shots,
                seed,
            };
            let quantum = train_model(&train_set.features, &quantum_settings)?;
            let quantum_scores =
                quantum
                    .model
                    .score_rows(&test_set.features, config.shots, seed ^ 0x9A4B)?;
            let (qbg, qsig) = scores_by_label(&test_set, &quantum_scores)?;
            let quantum_report = kfold_eval(&qbg, &qsig, config.folds, seed)?;

            let delta06 = fold_ratios(
                &quantum_report.rejection_06.per_fold,
                &classical_report.rejection_06.per_fold,
            );
            let delta08 = fold_ratios(
                &quantum_report.rejection_08.per_fold,
                &classical_report.rejection_08.per_fold,
            );
            let (d06_mean, d06_std) = mean_std(&delta06);
            let (d08_mean, d08_std) = mean_std(&delta08);

            let label = depth_spec.label();
            csv_rows.push(format!(
                "{label},{n_qubits},{},{},{},{},{},{},{},{},{},{},{},{},{d06_mean},{d06_std},{d08_mean},{d08_std}",
                quantum_report.auc_mean,
                quantum_report.auc_std,
                fmt_opt(quantum_report.rejection_06.mean),
                fmt_opt(quantum_report.rejection_06.std),
                fmt_opt(quantum_report.rejection_08.mean),
                fmt_opt(quantum_report.rejection_08.std),
                classical_report.auc_mean,
                classical_report.auc_std,
                fmt_opt(classical_report.rejection_06.mean),
                fmt_opt(classical_report.rejection_06.std),
                fmt_opt(classical_report.rejection_08.mean),
                fmt_opt(classical_report.rejection_08.std),
            ));

            let point = SweepPointReport {
                version: VERSION.into(),
                command: "sweep".into(),
                label: label.clone(),
                n_qubits,
                quantum: quantum_report,
                classical: classical_report.clone(),
                delta_qc_06: delta06,
                delta_qc_08: delta08,
            };
            let path = args.out.join(format!("point-nq{n_qubits}-L{label}.json"));
            write_json(&point, &path)?;
            point_files.push(path);
        }
    }

    let csv_file = args.out.join("sweep.csv");
    {
        let mut w = BufWriter::new(File::create(&csv_file)?);
        writeln!(
            w,
            "L,n_qubits,auc_q_mean,auc_q_std,rej06_q_mean,rej06_q_std,rej08_q_mean,rej08_q_std,\
             auc_c_mean,auc_c_std,rej06_c_mean,rej06_c_std,rej08_c_mean,rej08_c_std,\
             delta_qc_06_mean,delta_qc_06_std,delta_qc_08_mean,delta_qc_08_std"
        )?;
        for row in &csv_rows {
            writeln!(w, "{row}")?;
        }
        w.flush()?;
    }

    let report = SweepReport {
        version: VERSION.into(),
        command: "sweep".into(),
        config,
        csv_file,
        point_files,
    };
    write_json(&report, &args.out.join("sweep-report.json"))?;
    eprintln!("[qad] sweep finished in {:.2}s", started.elapsed().as_secs_f64());
    print_summary(&report)
}

// ---------------------------------------------------------------------------
// characterize
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct CharacterizeConfig {
    data: Option<DataSource>,
    l_values: String,
    n_qubits_values: String,
    samplers: String,
    angle_scale: f64,
    n_pairs: u64,
    q_samples: u64,
    bins: usize,
    seed: u64,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct CharacterizeReport {
    version: String,
    command: String,
    config: CharacterizeConfig,
    csv_file: PathBuf,
    rows: usize,
}

pub fn cmd_characterize(args: &args::CharacterizeArgs) -> Result<()> {
    let file = load_file_config(args.config.as_deref())?;
    let seed = args.seed.or(file.seed).unwrap_or(7);
    runcfg::init_workers(args.workers.or(file.workers).unwrap_or(0));

    let samplers: Vec<String> = args
        .samplers
        .clone()
        .or(file.samplers.clone())
        .unwrap_or_else(|| "uniform".into())
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let needs_data = samplers.iter().any(|s| s != "uniform");
    let data = needs_data.then(|| runcfg::resolve_data_source(&args.data, &file, seed));

    let config = CharacterizeConfig {
        data,
        l_values: args
            .l_values
            .clone()
            .or(file.l_values.clone())
            .unwrap_or_else(|| "1,2,3,4".into()),
        n_qubits_values: args
            .n_qubits_values
            .clone()
            .or(file.n_qubits_values.clone())
            .unwrap_or_else(|| "4".into()),
        samplers: samplers.join(","),
        angle_scale: args
            .angle_scale
            .or(file.angle_scale)
            .unwrap_or(std::f64::consts::PI),
        n_pairs: args.n_pairs.or(file.n_pairs).unwrap_or(100_000),
        q_samples: args.q_samples.or(file.q_samples).unwrap_or(10_000),
        bins: args.bins.or(file.bins).unwrap_or(75),
        seed,
        out: args.out.clone(),
    };
    ensure_out_dir(&args.out)?;
    let depth_grid = parse_depth_grid(&config.l_values)?;
    let qubit_grid = parse_usize_grid(&config.n_qubits_values)?;

    let started = Instant::now();
    let mut records = Vec::new();
    for &n_qubits in &qubit_grid {
        let dim = 2 * n_qubits;
        // Datasets for the background/signal samplers, regenerated per qubit
        // count for synthetic sources.
        let class_sets: Option<(LatentDataset, LatentDataset)> = match &config.data {
            None => None,
            Some(source) => {
                let source = match source {
                    DataSource::Synth(spec) => {
                        DataSource::Synth(qad_core::data::SynthSpec { dim, ..spec.clone() })
                    }
                    other => other.clone(),
                };
                let dataset = load_source(&source)?;
                let labels = dataset
                    .labels
                    .clone()
                    .ok_or_else(|| Error::Config("sampler dataset carries no labels".into()))?;
                let pick = |label: u8, tag: &str| -> Result<LatentDataset> {
                    let idx: Vec<usize> = (0..dataset.n_rows())
                        .filter(|&i| labels[i] == label)
                        .collect();
                    LatentDataset::new(
                        dataset.features.select(&idx),
                        None,
                        qad_core::data::DatasetMeta {
                            dim: dataset.dim(),
                            source: tag.into(),
                            seed: dataset.meta.seed,
                        },
                    )
                };
                Some((pick(0, "background")?, pick(1, "signal")?))
            }
        };

        for depth_spec in &depth_grid {
            let (depth, entanglement) = depth_spec.depth_and_entanglement();
            let encoding = EncodingSettings {
                n_qubits: Some(n_qubits),
                depth,
                entanglement,
                angle_scale: config.angle_scale,
            }
            .for_dim(dim)?;

            for sampler_name in &samplers {
                let sampler = match sampler_name.as_str() {
                    "uniform" => ParameterSampler::Uniform,
                    "background" => ParameterSampler::Dataset(
                        &class_sets
                            .as_ref()
                            .ok_or_else(|| {
                                Error::Config("background sampler needs a data source".into())
                            })?
                            .0,
                    ),
                    "signal" => ParameterSampler::Dataset(
                        &class_sets
                            .as_ref()
                            .ok_or_else(|| {
                                Error::Config("signal sampler needs a data source".into())
                            })?
                            .1,
                    ),
                    other => {
                        return Err(Error::Config(format!(
                            "unknown sampler {other:?} (expected uniform, background, signal)"
                        )))
                    }
                };

                let hist = sample_fidelity_histogram(
                    &encoding,
                    &sampler,
                    config.n_pairs,
                    config.bins,
                    seed,
                )?;
                let expr = expressibility(&hist, n_qubits)?;
                let (q_mean, _) = entanglement_capability_with_error(
                    &encoding,
                    &sampler,
                    config.q_samples,
                    seed,
                )?;
                let variance =
                    kernel_variance_sampled(&sampler, &encoding, config.n_pairs, seed)?;

                records.push(CharacterizationRecord {
                    depth_label: depth_spec.label(),
                    n_qubits,
                    sampler: sampler.label(),
                    expressibility: expr,
                    entanglement_capability: q_mean,
                    kernel_variance: variance,
                    n_samples: config.n_pairs,
                    seed,
                });
            }
        }
    }

    let csv_file = args.out.join("characterization.csv");
    {
        let mut w = BufWriter::new(File::create(&csv_file)?);
        write_characterization_csv(&records, &mut w)?;
        w.flush()?;
    }
    let report = CharacterizeReport {
        version: VERSION.into(),
        command: "characterize".into(),
        config,
        csv_file,
        rows: records.len(),
    };
    write_json(&report, &args.out.join("characterize-report.json"))?;
    eprintln!(
        "[qad] characterize finished in {:.2}s",
        started.elapsed().as_secs_f64()
    );
    print_summary(&report)
}
