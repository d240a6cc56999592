use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use glyphrun::alphabet::{parse_coded, write_coded, BlockPolicy};
use glyphrun::corpus::{
    generate_synthetic, ingest_directory, BigramTable, SplitCounts, SynthConfig,
};
use glyphrun::evaluation::{aggregate_runs, score};
use glyphrun::gaicda::{cluster_em, cluster_hierarchical, normalize_features};
use glyphrun::texture::{document_features, parse_features_csv, write_features_csv};
use glyphrun::{
    classify_gaicda, encode_text_with, CodeSequence, Document, EncodeOptions, EvalReport, Feature,
    FeatureVector, GaParams, GraphParams, MappingTable, Method, Partition, Script, ScriptModel,
    Split, TableSet,
};

use crate::failure::Failure;
use crate::output::{write_atomic, write_with};
use crate::plot::{range_svg, summary_csv};
use crate::{ClassifyArgs, Common, EncodeArgs, EvaluateArgs, FeaturesArgs, InputArgs, SynthArgs};

const DEFAULT_SEED: u64 = 42;

fn out_dir(common: &Common) -> Result<PathBuf, Failure> {
    common.settings.require(common.out.clone(), "out")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::io(path, e))?;
    String::from_utf8(bytes)
        .map_err(|_| Failure::validation(format!("{}: file is not valid UTF-8", path.display())))
}

fn load_tables(common: &Common, input: &InputArgs) -> Result<TableSet, Failure> {
    let mut set = TableSet::defaults();
    if let Some(dir) = common.settings.pick_opt(input.tables.clone(), "tables")? {
        if !dir.is_dir() {
            return Err(Failure::io(&dir, "table directory not found"));
        }
        for script in Script::ALL {
            let path = dir.join(format!("{}.table", script.dir_name()));
            if path.is_file() {
                set.set(MappingTable::load(&path, BlockPolicy::default())?);
            }
        }
    }
    Ok(set)
}

/// Documents of the requested split (`all` keeps both).
fn read_corpus(
    common: &Common,
    input: &InputArgs,
    default_split: &str,
) -> Result<Vec<Document>, Failure> {
    let root: PathBuf = common.settings.require(input.corpus.clone(), "corpus")?;
    let split: String =
        common
            .settings
            .pick(input.split.clone(), "split", default_split.to_string())?;
    let wanted: Option<Split> = match split.trim().to_ascii_lowercase().as_str() {
        "all" => None,
        other => Some(other.parse()?),
    };
    let dataset = ingest_directory(&root)?;
    let docs: Vec<Document> = dataset
        .documents()
        .iter()
        .filter(|d| wanted.is_none_or(|s| d.split == s))
        .cloned()
        .collect();
    if docs.is_empty() {
        return Err(Failure::validation(format!(
            "{}: no {split} documents",
            root.display()
        )));
    }
    Ok(docs)
}

fn encode_documents(
    common: &Common,
    input: &InputArgs,
    docs: &[Document],
) -> Result<Vec<CodeSequence>, Failure> {
    let tables = load_tables(common, input)?;
    let options = EncodeOptions {
        break_runs_at_space: common
            .settings
            .switch(input.break_runs_at_space, "break-runs-at-space")?,
    };
    docs.iter()
        .map(|d| {
            let seq = encode_text_with(&d.text, &tables, &d.doc_id, options)?;
            if seq.skipped > 0 {
                log::debug!("{}: skipped {} unmapped characters", d.doc_id, seq.skipped);
            }
            Ok(seq.with_script(d.script))
        })
        .collect()
}

/// The script segment of a `split/script/name` document id, if any.
fn script_from_id(doc_id: &str) -> Option<Script> {
    doc_id.split('/').nth(1).and_then(|s| s.parse().ok())
}

pub fn encode(common: &Common, args: &EncodeArgs) -> Result<(), Failure> {
    let out = out_dir(common)?;
    let docs = read_corpus(common, &args.input, "all")?;
    let seqs = encode_documents(common, &args.input, &docs)?;
    let path = out.join("coded.tsv");
    write_with(&path, |buf| write_coded(buf, &seqs))?;
    println!("encoded {} documents -> {}", seqs.len(), path.display());
    Ok(())
}

pub fn features(common: &Common, args: &FeaturesArgs) -> Result<(), Failure> {
    let out = out_dir(common)?;
    let seqs = match common.settings.pick_opt(args.coded.clone(), "coded")? {
        Some(path) => {
            let text = read_text(&path)?;
            parse_coded(&text, &path.display().to_string())?
                .into_iter()
                .map(|s| match script_from_id(&s.doc_id) {
                    Some(script) => s.with_script(script),
                    None => s,
                })
                .collect()
        }
        None => {
            let docs = read_corpus(common, &args.input, "test")?;
            encode_documents(common, &args.input, &docs)?
        }
    };
    let vectors = seqs
        .iter()
        .map(document_features)
        .collect::<Result<Vec<_>, _>>()?;
    let path = out.join("features.csv");
    write_with(&path, |buf| write_features_csv(buf, &vectors))?;

    if common.settings.switch(args.plot, "plot")? {
        if vectors.iter().all(|v| v.script.is_none()) {
            return Err(Failure::validation(
                "plots need script labels; none of the documents has one",
            ));
        }
        for feature in Feature::DEFAULT_SUBSET {
            write_atomic(
                &out.join(format!("{}.svg", feature.name())),
                range_svg(&vectors, feature).as_bytes(),
            )?;
        }
        write_atomic(&out.join("summary.csv"), summary_csv(&vectors).as_bytes())?;
    }
    println!("{} feature vectors -> {}", vectors.len(), path.display());
    Ok(())
}

struct ClassifyPlan {
    method: Method,
    runs: usize,
    seed: u64,
    subset: Vec<Feature>,
    graph: GraphParams,
    ga: GaParams,
}

fn plan(common: &Common, args: &ClassifyArgs) -> Result<ClassifyPlan, Failure> {
    let s = &common.settings;
    let defaults = GaParams::default();
    let graph_defaults = GraphParams::default();
    let method: Method = s
        .pick(args.method.clone(), "method", "gaicda".to_string())?
        .parse()?;
    let subset = Feature::parse_list(&s.pick(
        args.feature_set.clone(),
        "feature-set",
        "sre,lre,rp".to_string(),
    )?)?;
    let seed = s.pick(common.seed, "seed", DEFAULT_SEED)?;
    let runs = s.pick(args.runs, "runs", 1)?;
    if runs == 0 {
        return Err(Failure::validation("--runs must be at least 1"));
    }
    let graph = GraphParams {
        threshold: s.pick(args.threshold, "threshold", graph_defaults.threshold)?,
        neighbors: s.pick(args.neighbors, "neighbors", graph_defaults.neighbors)?,
    };
    let ga = GaParams {
        population_size: s.pick(args.population, "population", defaults.population_size)?,
        generations: s.pick(args.generations, "generations", defaults.generations)?,
        crossover_rate: s.pick(
            args.crossover_rate,
            "crossover-rate",
            defaults.crossover_rate,
        )?,
        mutation_rate: s.pick(args.mutation_rate, "mutation-rate", defaults.mutation_rate)?,
        elitism_fraction: s.pick(args.elitism, "elitism", defaults.elitism_fraction)?,
        target_clusters: s.pick(args.clusters, "clusters", defaults.target_clusters)?,
        seed,
    };
    graph.validate()?;
    ga.validate()?;
    Ok(ClassifyPlan {
        method,
        runs,
        seed,
        subset,
        graph,
        ga,
    })
}

fn classify_once(
    plan: &ClassifyPlan,
    vectors: &[FeatureVector],
    seed: u64,
) -> Result<Partition, Failure> {
    let subset_names: Vec<&str> = plan.subset.iter().map(|f| f.name()).collect();
    let partition = match plan.method {
        Method::Gaicda => {
            let ga = GaParams {
                seed,
                ..plan.ga.clone()
            };
            return Ok(classify_gaicda(vectors, &plan.subset, &plan.graph, &ga)?);
        }
        Method::Hierarchical => cluster_hierarchical(
            &normalize_features(vectors, &plan.subset)?,
            plan.ga.target_clusters,
            seed,
        )?,
        Method::Em => cluster_em(
            &normalize_features(vectors, &plan.subset)?,
            plan.ga.target_clusters,
            seed,
        )?,
    };
    let mut partition = partition;
    partition
        .provenance
        .params
        .insert("features".into(), subset_names.join(","));
    Ok(partition)
}

fn truth_from_vectors(vectors: &[FeatureVector]) -> Option<BTreeMap<String, Script>> {
    vectors
        .iter()
        .map(|v| v.script.map(|s| (v.doc_id.clone(), s)))
        .collect()
}

pub fn classify(common: &Common, args: &ClassifyArgs) -> Result<(), Failure> {
    let out = out_dir(common)?;
    let plan = plan(common, args)?;
    let vectors = match common
        .settings
        .pick_opt(args.features.clone(), "features")?
    {
        Some(path) => parse_features_csv(&read_text(&path)?, &path.display().to_string())?,
        None => {
            let docs = read_corpus(common, &args.input, "test")?;
            let seqs = encode_documents(common, &args.input, &docs)?;
            seqs.iter()
                .map(document_features)
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let mut partitions = Vec::with_capacity(plan.runs);
    for run in 0..plan.runs {
        partitions.push(classify_once(
            &plan,
            &vectors,
            plan.seed.wrapping_add(run as u64),
        )?);
    }

    let params_path = out.join("params.txt");
    if plan.runs == 1 {
        let p = &partitions[0];
        write_with(&out.join("partition.csv"), |buf| p.write_csv(buf))?;
        write_with(&params_path, |buf| p.write_params(buf))?;
        println!(
            "{}: {} clusters over {} documents",
            plan.method,
            p.k(),
            p.len()
        );
        return Ok(());
    }

    let width = plan.runs.to_string().len().max(3);
    for (run, p) in partitions.iter().enumerate() {
        let path = out
            .join("runs")
            .join(format!("run_{:0width$}.csv", run + 1));
        write_with(&path, |buf| p.write_csv(buf))?;
    }
    write_with(&params_path, |buf| {
        partitions[0].write_params(&mut *buf)?;
        use std::io::Write;
        writeln!(buf, "runs={}", plan.runs)?;
        writeln!(
            buf,
            "seeds={}..={}",
            plan.seed,
            plan.seed.wrapping_add(plan.runs as u64 - 1)
        )
    })?;

    let truth = truth_from_vectors(&vectors);
    let reports: Option<Vec<EvalReport>> = match &truth {
        Some(t) => Some(
            partitions
                .iter()
                .map(|p| score(p, t))
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let mut table =
        String::from("run,seed,clusters,macro_precision,macro_recall,macro_f_measure\n");
    for (run, p) in partitions.iter().enumerate() {
        let metrics = match &reports {
            Some(r) => {
                let m = r[run].macro_avg;
                format!("{},{},{}", m.precision, m.recall, m.f_measure)
            }
            None => ",,".to_string(),
        };
        table.push_str(&format!(
            "{},{},{},{metrics}\n",
            run + 1,
            p.provenance.seed,
            p.k()
        ));
    }
    write_atomic(&out.join("aggregate.csv"), table.as_bytes())?;
    if let Some(reports) = reports {
        let agg = aggregate_runs(&reports)?;
        write_with(&out.join("aggregate.txt"), |buf| agg.write_text(buf))?;
    }
    println!("{}: {} runs -> {}", plan.method, plan.runs, out.display());
    Ok(())
}

fn partition_files(path: &Path) -> Result<Vec<PathBuf>, Failure> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    if !path.is_dir() {
        return Err(Failure::io(path, "no such file or directory"));
    }
    let dir = if path.join("runs").is_dir() {
        path.join("runs")
    } else if path.join("partition.csv").is_file() {
        return Ok(vec![path.join("partition.csv")]);
    } else {
        path.to_path_buf()
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(&dir).map_err(|e| Failure::io(&dir, e))? {
        let p = entry.map_err(|e| Failure::io(&dir, e))?.path();
        if p.is_file() && p.extension().is_some_and(|e| e == "csv") {
            files.push(p);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(Failure::validation(format!(
            "{}: no partition files",
            dir.display()
        )));
    }
    Ok(files)
}

struct TruthEntry {
    script: Script,
    split: Option<Split>,
}

fn split_from_id(doc_id: &str) -> Option<Split> {
    doc_id.split('/').next().and_then(|s| s.parse().ok())
}

fn truth_from_csv(path: &Path) -> Result<BTreeMap<String, TruthEntry>, Failure> {
    let origin = path.display().to_string();
    let mut reader = csv::Reader::from_path(path).map_err(|e| Failure::io(path, e))?;
    let headers = reader
        .headers()
        .map_err(|e| Failure::validation(format!("{origin}: {e}")))?
        .clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let id_col =
        column("docId").ok_or_else(|| Failure::validation(format!("{origin}: no docId column")))?;
    let script_col = column("script")
        .ok_or_else(|| Failure::validation(format!("{origin}: no script column")))?;
    let split_col = column("split");
    let mut out = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::validation(format!("{origin}: {e}")))?;
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let doc_id = field(id_col).to_string();
        let script = field(script_col)
            .parse::<Script>()
            .map_err(|e| Failure::validation(format!("{origin}:{}: {e}", line + 2)))?;
        let split = match split_col {
            Some(i) => Some(field(i).parse::<Split>()?),
            None => split_from_id(&doc_id),
        };
        if out
            .insert(doc_id.clone(), TruthEntry { script, split })
            .is_some()
        {
            return Err(Failure::validation(format!(
                "{origin}: duplicate docId {doc_id}"
            )));
        }
    }
    Ok(out)
}

/// Ground truth restricted to the documents the partition should cover.
/// Every partition document needs a label and every labelled document of
/// the partition's splits must be present.
fn matched_truth(
    partition: &Partition,
    origin: &Path,
    truth: &BTreeMap<String, TruthEntry>,
) -> Result<BTreeMap<String, Script>, Failure> {
    let ids: BTreeSet<&str> = partition.doc_ids().iter().map(String::as_str).collect();
    if let Some(missing) = ids.iter().find(|id| !truth.contains_key(**id)) {
        return Err(Failure::validation(format!(
            "{}: document {missing} has no ground-truth label",
            origin.display()
        )));
    }
    let splits: Option<BTreeSet<Split>> = ids.iter().map(|id| truth[*id].split).collect();
    for (id, entry) in truth {
        let expected = match (&splits, entry.split) {
            (Some(splits), Some(split)) => splits.contains(&split),
            _ => true,
        };
        if expected && !ids.contains(id.as_str()) {
            return Err(Failure::validation(format!(
                "{}: document {id} is missing from the partition",
                origin.display()
            )));
        }
    }
    Ok(ids
        .iter()
        .map(|id| (id.to_string(), truth[*id].script))
        .collect())
}

pub fn evaluate(common: &Common, args: &EvaluateArgs) -> Result<(), Failure> {
    let s = &common.settings;
    let out = out_dir(common)?;
    let partition_path: PathBuf = s.require(args.partition.clone(), "partition")?;
    let truth = match (
        s.pick_opt(args.truth.clone(), "truth")?,
        s.pick_opt(args.corpus.clone(), "corpus")?,
    ) {
        (Some(path), _) => truth_from_csv(&path)?,
        (None, Some(root)) => ingest_directory(&root)?
            .documents()
            .iter()
            .map(|d| {
                (
                    d.doc_id.clone(),
                    TruthEntry {
                        script: d.script,
                        split: Some(d.split),
                    },
                )
            })
            .collect(),
        (None, None) => return Err(Failure::validation("--truth or --corpus is required")),
    };

    let mut reports = Vec::new();
    for file in partition_files(&partition_path)? {
        let partition = Partition::parse_csv(&read_text(&file)?, &file.display().to_string())?;
        let labels = matched_truth(&partition, &file, &truth)?;
        reports.push(score(&partition, &labels)?);
    }
    let report = if reports.len() == 1 {
        let r = reports.pop().expect("one report");
        write_with(&out.join("confusion.csv"), |buf| r.write_confusion_csv(buf))?;
        r
    } else {
        aggregate_runs(&reports)?
    };
    let mut text = Vec::new();
    report
        .write_text(&mut text)
        .map_err(|e| Failure::io(&out, e))?;
    write_atomic(&out.join("report.txt"), &text)?;
    print!("{}", String::from_utf8_lossy(&text));
    Ok(())
}

fn parse_counts(list: &str) -> Result<BTreeMap<Script, usize>, Failure> {
    let mut out = BTreeMap::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, count) = part
            .split_once('=')
            .ok_or_else(|| Failure::validation(format!("expected script=count, got {part:?}")))?;
        let script: Script = name.parse()?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Failure::validation(format!("bad document count {count:?}")))?;
        out.insert(script, count);
    }
    Ok(out)
}

fn clear_corpus(out: &Path, force: bool) -> Result<(), Failure> {
    let mut entries = match std::fs::read_dir(out) {
        Ok(entries) => entries,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(()),
        Err(e) => return Err(Failure::io(out, e)),
    };
    if entries.next().is_none() {
        return Ok(());
    }
    if !force {
        return Err(Failure::validation(format!(
            "{} is not empty (use --force to replace its corpus)",
            out.display()
        )));
    }
    for name in ["train", "test"] {
        let dir = out.join(name);
        if dir.is_dir() {
            std::fs::remove_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
        }
    }
    Ok(())
}

pub fn synth(common: &Common, args: &SynthArgs) -> Result<(), Failure> {
    let s = &common.settings;
    let out = out_dir(common)?;
    let mut config = SynthConfig {
        seed: s.pick(common.seed, "seed", DEFAULT_SEED)?,
        ..SynthConfig::default()
    };
    config.min_length = s.pick(args.min_length, "min-length", config.min_length)?;
    let train = parse_counts(&s.pick(args.train.clone(), "train", String::new())?)?;
    let test = parse_counts(&s.pick(args.test.clone(), "test", String::new())?)?;
    for c in &mut config.counts {
        let SplitCounts { script, .. } = *c;
        c.train = train.get(&script).copied().unwrap_or(c.train);
        c.test = test.get(&script).copied().unwrap_or(c.test);
    }

    let model_dir: Option<PathBuf> = s.pick_opt(args.models.clone(), "models")?;
    let tables = TableSet::defaults();
    let mut models = Vec::new();
    for script in Script::ALL {
        let model = match &model_dir {
            Some(dir) if dir.join(format!("{}.freq", script.dir_name())).is_file() => {
                ScriptModel::load(&dir.join(format!("{}.freq", script.dir_name())))?
            }
            Some(dir) if !dir.is_dir() => {
                return Err(Failure::io(dir, "model directory not found"))
            }
            _ => ScriptModel::default_for(script),
        };
        let bigram_path = model_dir
            .as_ref()
            .map(|dir| dir.join(format!("{}.bigram", script.dir_name())))
            .filter(|p| p.is_file());
        let model = match bigram_path {
            Some(path) => model.with_bigrams(BigramTable::load(&path)?)?,
            None => model,
        };
        if let Err(e) = model.validate_against(&tables) {
            log::warn!("{script} model: {e}");
        }
        models.push(model);
    }

    let dataset = generate_synthetic(&models, &config)?;
    clear_corpus(&out, s.switch(args.force, "force")?)?;
    for d in dataset.documents() {
        write_atomic(&out.join(format!("{}.txt", d.doc_id)), d.text.as_bytes())?;
    }
    write_atomic(&out.join("manifest.csv"), dataset.manifest().as_bytes())?;
    println!(
        "{} documents -> {} (manifest sha256 {})",
        dataset.len(),
        out.display(),
        dataset.manifest_hash()
    );
    Ok(())
}
