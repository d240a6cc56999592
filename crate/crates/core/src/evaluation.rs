//! Scoring partitions against ground-truth scripts.
//!
//! Clusters carry arbitrary labels, so they are first matched one-to-one to
//! script classes by the assignment that maximizes the number of agreeing
//! documents. Precision, recall and F-measure follow per class and are
//! macro-averaged.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use itertools::Itertools;

use crate::alphabet::Script;
use crate::error::{Error, Result};
use crate::gaicda::Partition;
use crate::texture::{Feature, FeatureVector};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl Metrics {
    fn from_pr(precision: f64, recall: f64) -> Self {
        let f_measure = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics {
            precision,
            recall,
            f_measure,
        }
    }
}

/// Mean and sample standard deviation of one metric over repeated runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub std_dev: f64,
}

impl MeanStd {
    /// Two-pass mean and sample (n - 1) standard deviation; zero spread for
    /// a single value.
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std_dev = if values.len() > 1 {
            (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        MeanStd { mean, std_dev }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub runs: usize,
    /// Keyed like the report lines: `macro.precision`, `recall.latin`, ...
    pub metrics: BTreeMap<String, MeanStd>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub classes: Vec<Script>,
    pub class_metrics: Vec<Metrics>,
    pub macro_avg: Metrics,
    /// Cluster label → matched class; clusters left unmatched are absent.
    pub mapping: BTreeMap<usize, Script>,
    /// Rows are clusters, columns follow `classes`. Empty for aggregates.
    pub confusion: Vec<Vec<usize>>,
    pub agreement: usize,
    pub documents: usize,
    pub run_stats: Option<RunStats>,
}

/// One-to-one cluster → class matching with the largest total overlap.
///
/// `overlap[cluster][class]`. Candidates are enumerated in lexicographic
/// order and the first maximum is kept, so ties favor low cluster labels.
pub fn best_assignment(overlap: &[Vec<usize>]) -> (BTreeMap<usize, usize>, usize) {
    let k = overlap.len();
    let c = overlap.first().map_or(0, Vec::len);
    let mut best: (BTreeMap<usize, usize>, usize) = (BTreeMap::new(), 0);
    let mut found = false;
    if k <= c {
        for classes in (0..c).permutations(k) {
            let total = classes
                .iter()
                .enumerate()
                .map(|(cl, &cls)| overlap[cl][cls])
                .sum();
            if !found || total > best.1 {
                best = (classes.into_iter().enumerate().collect(), total);
                found = true;
            }
        }
    } else {
        for clusters in (0..k).permutations(c) {
            let total = clusters
                .iter()
                .enumerate()
                .map(|(cls, &cl)| overlap[cl][cls])
                .sum();
            if !found || total > best.1 {
                best = (
                    clusters
                        .into_iter()
                        .enumerate()
                        .map(|(cls, cl)| (cl, cls))
                        .collect(),
                    total,
                );
                found = true;
            }
        }
    }
    best
}

fn confusion(
    partition: &Partition,
    truth: &BTreeMap<String, Script>,
) -> Result<(Vec<Script>, Vec<Vec<usize>>)> {
    let mut labels = Vec::with_capacity(partition.len());
    for doc in partition.doc_ids() {
        labels.push(
            *truth
                .get(doc)
                .ok_or_else(|| Error::MissingTruth(doc.clone()))?,
        );
    }
    let classes: Vec<Script> = labels
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut grid = vec![vec![0; classes.len()]; partition.k()];
    for (&cluster, script) in partition.labels().iter().zip(&labels) {
        let col = classes
            .binary_search(script)
            .expect("class collected above");
        grid[cluster][col] += 1;
    }
    Ok((classes, grid))
}

/// Matches clusters to scripts; returns the mapping and the number of
/// documents whose cluster maps to their own script.
pub fn align_clusters(
    partition: &Partition,
    truth: &BTreeMap<String, Script>,
) -> Result<(BTreeMap<usize, Script>, usize)> {
    if partition.is_empty() {
        return Err(Error::Empty("partition has no documents"));
    }
    let (classes, grid) = confusion(partition, truth)?;
    let (mapping, agreement) = best_assignment(&grid);
    Ok((
        mapping
            .into_iter()
            .map(|(cl, cls)| (cl, classes[cls]))
            .collect(),
        agreement,
    ))
}

/// Per-class and macro precision / recall / F-measure after alignment.
pub fn score(partition: &Partition, truth: &BTreeMap<String, Script>) -> Result<EvalReport> {
    if partition.is_empty() {
        return Err(Error::Empty("partition has no documents"));
    }
    let (classes, grid) = confusion(partition, truth)?;
    let (mapping, agreement) = best_assignment(&grid);

    let cluster_sizes: Vec<usize> = grid.iter().map(|row| row.iter().sum()).collect();
    let class_sizes: Vec<usize> = (0..classes.len())
        .map(|c| grid.iter().map(|row| row[c]).sum())
        .collect();

    let class_metrics: Vec<Metrics> = (0..classes.len())
        .map(|cls| match mapping.iter().find(|&(_, &c)| c == cls) {
            Some((&cluster, _)) => {
                let hits = grid[cluster][cls] as f64;
                Metrics::from_pr(
                    hits / cluster_sizes[cluster] as f64,
                    hits / class_sizes[cls] as f64,
                )
            }
            None => Metrics::default(),
        })
        .collect();

    let m = class_metrics.len() as f64;
    let macro_avg = Metrics {
        precision: class_metrics.iter().map(|x| x.precision).sum::<f64>() / m,
        recall: class_metrics.iter().map(|x| x.recall).sum::<f64>() / m,
        f_measure: class_metrics.iter().map(|x| x.f_measure).sum::<f64>() / m,
    };

    Ok(EvalReport {
        mapping: mapping
            .into_iter()
            .map(|(cl, cls)| (cl, classes[cls]))
            .collect(),
        classes,
        class_metrics,
        macro_avg,
        confusion: grid,
        agreement,
        documents: partition.len(),
        run_stats: None,
    })
}

impl EvalReport {
    /// Every metric as `(key, value)`, in report order.
    pub fn metric_values(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (script, m) in self.classes.iter().zip(&self.class_metrics) {
            let s = script.dir_name();
            out.push((format!("precision.{s}"), m.precision));
            out.push((format!("recall.{s}"), m.recall));
            out.push((format!("f_measure.{s}"), m.f_measure));
        }
        out.push(("macro.precision".into(), self.macro_avg.precision));
        out.push(("macro.recall".into(), self.macro_avg.recall));
        out.push(("macro.f_measure".into(), self.macro_avg.f_measure));
        out
    }

    /// Key-value report. Aggregates print `mean (std)` per metric.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "documents = {}", self.documents)?;
        let classes: Vec<&str> = self.classes.iter().map(|s| s.dir_name()).collect();
        writeln!(out, "classes = {}", classes.join(","))?;
        match &self.run_stats {
            Some(stats) => {
                writeln!(out, "runs = {}", stats.runs)?;
                for (key, _) in self.metric_values() {
                    let ms = stats.metrics[&key];
                    writeln!(out, "{key} = {} ({})", ms.mean, ms.std_dev)?;
                }
            }
            None => {
                writeln!(out, "clusters = {}", self.confusion.len())?;
                writeln!(out, "agreement = {}", self.agreement)?;
                for (cluster, script) in &self.mapping {
                    writeln!(out, "mapping.{cluster} = {}", script.dir_name())?;
                }
                for (key, value) in self.metric_values() {
                    writeln!(out, "{key} = {value}")?;
                }
            }
        }
        Ok(())
    }

    pub fn write_confusion_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let classes: Vec<&str> = self.classes.iter().map(|s| s.dir_name()).collect();
        writeln!(out, "cluster,{}", classes.join(","))?;
        for (cluster, row) in self.confusion.iter().enumerate() {
            writeln!(out, "{cluster},{}", row.iter().join(","))?;
        }
        Ok(())
    }
}

/// Averages repeated runs: metrics become means and `run_stats` holds mean
/// and sample standard deviation for each metric.
pub fn aggregate_runs(reports: &[EvalReport]) -> Result<EvalReport> {
    let first = reports
        .first()
        .ok_or(Error::Empty("no reports to aggregate"))?;
    let keys: Vec<String> = first.metric_values().into_iter().map(|(k, _)| k).collect();
    let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for report in reports {
        if report.classes != first.classes {
            return Err(Error::InvalidParameter(
                "reports cover different classes".into(),
            ));
        }
        for (k, v) in report.metric_values() {
            columns.entry(k).or_default().push(v);
        }
    }
    let metrics: BTreeMap<String, MeanStd> = columns
        .iter()
        .map(|(k, v)| (k.clone(), MeanStd::of(v)))
        .collect();
    let mean = |key: &str| metrics[key].mean;

    let class_metrics = first
        .classes
        .iter()
        .map(|s| {
            let s = s.dir_name();
            Metrics {
                precision: mean(&format!("precision.{s}")),
                recall: mean(&format!("recall.{s}")),
                f_measure: mean(&format!("f_measure.{s}")),
            }
        })
        .collect();
    debug_assert_eq!(keys.len(), metrics.len());

    Ok(EvalReport {
        classes: first.classes.clone(),
        class_metrics,
        macro_avg: Metrics {
            precision: mean("macro.precision"),
            recall: mean("macro.recall"),
            f_measure: mean("macro.f_measure"),
        },
        mapping: BTreeMap::new(),
        confusion: Vec::new(),
        agreement: 0,
        documents: first.documents,
        run_stats: Some(RunStats {
            runs: reports.len(),
            metrics,
        }),
    })
}

/// Per-script `[min, max]` of one feature.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRanges {
    pub feature: Feature,
    pub ranges: BTreeMap<Script, (f64, f64)>,
}

impl FeatureRanges {
    /// Ranges over labelled vectors; unlabelled vectors are ignored.
    pub fn compute(vectors: &[FeatureVector], feature: Feature) -> Self {
        let mut ranges: BTreeMap<Script, (f64, f64)> = BTreeMap::new();
        for v in vectors {
            let Some(script) = v.script else { continue };
            let x = v.get(feature);
            ranges
                .entry(script)
                .and_modify(|r| *r = (r.0.min(x), r.1.max(x)))
                .or_insert((x, x));
        }
        FeatureRanges { feature, ranges }
    }

    /// True when no two scripts' closed ranges intersect.
    pub fn pairwise_disjoint(&self) -> bool {
        let mut sorted: Vec<(f64, f64)> = self.ranges.values().copied().collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        sorted.windows(2).all(|w| w[0].1 < w[1].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaicda::{Method, Provenance};

    fn truth_5_5_5() -> (Vec<String>, BTreeMap<String, Script>) {
        let mut ids = Vec::new();
        let mut truth = BTreeMap::new();
        for (s, script) in Script::ALL.iter().enumerate() {
            for i in 0..5 {
                let id = format!("{s}-{i}");
                truth.insert(id.clone(), *script);
                ids.push(id);
            }
        }
        (ids, truth)
    }

    fn part(ids: &[String], groups: &[usize]) -> Partition {
        Partition::from_groups(ids.to_vec(), groups, Provenance::new(Method::Gaicda, 0)).unwrap()
    }

    #[test]
    fn perfect_partition_scores_one() {
        let (ids, truth) = truth_5_5_5();
        let groups: Vec<usize> = (0..15).map(|i| i / 5).collect();
        let r = score(&part(&ids, &groups), &truth).unwrap();
        assert_eq!(r.agreement, 15);
        for m in r.class_metrics.iter().chain([&r.macro_avg]) {
            assert_eq!((m.precision, m.recall, m.f_measure), (1.0, 1.0, 1.0));
        }
        assert_eq!(r.confusion.iter().flatten().sum::<usize>(), 15);
    }

    #[test]
    fn swapped_labels_align_the_same() {
        let (ids, truth) = truth_5_5_5();
        let groups: Vec<usize> = (0..15).map(|i| [2, 0, 1][i / 5]).collect();
        let (mapping, agreement) = align_clusters(&part(&ids, &groups), &truth).unwrap();
        assert_eq!(agreement, 15);
        assert_eq!(mapping.len(), 3);
    }

    #[test]
    fn one_misplaced_document() {
        let (ids, truth) = truth_5_5_5();
        // first Cyrillic document lands in the Latin cluster
        let mut groups: Vec<usize> = (0..15).map(|i| i / 5).collect();
        groups[0] = 1;
        let r = score(&part(&ids, &groups), &truth).unwrap();
        let cyr = r
            .classes
            .iter()
            .position(|&s| s == Script::Cyrillic)
            .unwrap();
        let lat = r.classes.iter().position(|&s| s == Script::Latin).unwrap();
        assert_eq!(r.class_metrics[cyr].recall, 4.0 / 5.0);
        assert_eq!(r.class_metrics[cyr].precision, 1.0);
        assert_eq!(r.class_metrics[lat].precision, 5.0 / 6.0);
        let f = &r.class_metrics[lat];
        assert!(
            (f.f_measure - 2.0 * f.precision * f.recall / (f.precision + f.recall)).abs() < 1e-15
        );
    }

    #[test]
    fn missing_truth_is_an_error() {
        let (ids, mut truth) = truth_5_5_5();
        truth.remove(&ids[3]);
        let groups: Vec<usize> = (0..15).map(|i| i / 5).collect();
        assert!(matches!(
            score(&part(&ids, &groups), &truth),
            Err(Error::MissingTruth(_))
        ));
    }

    #[test]
    fn extra_clusters_and_unmatched_classes() {
        let (ids, truth) = truth_5_5_5();
        // one cluster for everything: only one class can be matched
        let r = score(&part(&ids, &[0; 15]), &truth).unwrap();
        assert_eq!(r.mapping.len(), 1);
        assert_eq!(
            r.class_metrics
                .iter()
                .filter(|m| m.f_measure == 0.0)
                .count(),
            2
        );
        // singletons: three matched, recall 1/5 each
        let groups: Vec<usize> = (0..15).collect();
        let r = score(&part(&ids, &groups), &truth).unwrap();
        assert_eq!(r.agreement, 3);
        assert!(r
            .class_metrics
            .iter()
            .all(|m| m.precision == 1.0 && m.recall == 0.2));
    }

    #[test]
    fn two_point_aggregate() {
        let (ids, truth) = truth_5_5_5();
        let good = score(
            &part(&ids, &(0..15).map(|i| i / 5).collect::<Vec<_>>()),
            &truth,
        )
        .unwrap();
        let mut bad = good.clone();
        bad.macro_avg.precision = 0.0;
        let agg = aggregate_runs(&[good.clone(), bad]).unwrap();
        let ms = agg.run_stats.as_ref().unwrap().metrics["macro.precision"];
        assert_eq!(ms.mean, 0.5);
        assert!((ms.std_dev - 0.5f64.sqrt()).abs() < 1e-15);
        let same = aggregate_runs(&[good.clone(), good]).unwrap();
        assert!(same
            .run_stats
            .unwrap()
            .metrics
            .values()
            .all(|m| m.std_dev == 0.0));
        assert!(aggregate_runs(&[]).is_err());
    }

    #[test]
    fn report_text_format() {
        let (ids, truth) = truth_5_5_5();
        let r = score(
            &part(&ids, &(0..15).map(|i| i / 5).collect::<Vec<_>>()),
            &truth,
        )
        .unwrap();
        let mut buf = Vec::new();
        r.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("macro.f_measure = 1\n"));
        assert!(text.contains("mapping.0 = cyrillic\n"));
        let agg = aggregate_runs(&[r.clone(), r]).unwrap();
        let mut buf = Vec::new();
        agg.write_text(&mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .contains("macro.recall = 1 (0)\n"));
    }

    #[test]
    fn ranges_disjointness() {
        let mk = |s: Script, x: f64| FeatureVector {
            doc_id: String::new(),
            script: Some(s),
            sre: x,
            lre: 0.0,
            gln: 0.0,
            rln: 0.0,
            rp: 0.0,
        };
        let v = [
            mk(Script::Latin, 1.0),
            mk(Script::Latin, 2.0),
            mk(Script::Cyrillic, 3.0),
        ];
        assert!(FeatureRanges::compute(&v, Feature::Sre).pairwise_disjoint());
        let v = [
            mk(Script::Latin, 1.0),
            mk(Script::Latin, 3.0),
            mk(Script::Cyrillic, 2.0),
        ];
        assert!(!FeatureRanges::compute(&v, Feature::Sre).pairwise_disjoint());
        // constant columns touch, which counts as overlap
        assert!(!FeatureRanges::compute(&v, Feature::Lre).pairwise_disjoint());
    }
}
