use serde_json::json;

use seedlex::lexicon::{export_csv, LexiconBuilder};

use super::{file_record, load_vocabulary, sizes, BuildArgs};
use crate::config::RunConfig;
use crate::output::{ensure_dir, write_file, write_json};

pub fn build(config: &RunConfig, args: &BuildArgs) -> anyhow::Result<()> {
    let seeds_config = config.seeds()?;
    let loaded = load_vocabulary(config)?;
    let seeds = seeds_config.load()?;
    let sizes = sizes(config, Some(args));

    let builder = LexiconBuilder {
        aggregation: sizes.aggregation,
        embedding_id: Some(loaded.embedding_id.clone()),
        filter_digest: Some(loaded.filter_digest.clone()),
    };
    let lexicon = builder.build(
        &seeds,
        &loaded.candidates,
        &loaded.table,
        sizes.positive,
        sizes.negative,
    )?;

    let dir = ensure_dir(&config.output_dir())?;
    let csv_path = dir.join(format!("{}.csv", seeds.concept()));
    write_file(&csv_path, |w| Ok(export_csv(&lexicon, w)?))?;

    let seed_files = [&seeds_config.path, &seeds_config.positive_path, &seeds_config.negative_path]
        .into_iter()
        .flatten()
        .map(|p| file_record(p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut record = loaded.record;
    record["tool"] = json!({ "name": "seedlex", "version": env!("CARGO_PKG_VERSION") });
    record["seeds"] = json!({
        "concept": seeds.concept(),
        "positive_label": seeds.positive_label(),
        "negative_label": seeds.negative_label(),
        "positive": seeds.positive_seeds().len(),
        "negative": seeds.negative_seeds().len(),
        "files": seed_files,
        "digest": seeds.digest(),
    });
    record["sizes"] = json!({
        "positive": sizes.positive,
        "negative": sizes.negative,
        "aggregation": sizes.aggregation,
    });
    record["build"] = json!(lexicon.provenance());
    record["lexicon"] = json!({
        "file": format!("{}.csv", seeds.concept()),
        "entries": lexicon.len(),
        "digest": lexicon.digest(),
    });
    write_json(&dir.join(format!("{}.provenance.json", seeds.concept())), &record)?;

    println!(
        "{}: {} entries ({} expanded) -> {}",
        seeds.concept(),
        lexicon.len(),
        lexicon.expanded().count(),
        csv_path.display()
    );
    Ok(())
}
