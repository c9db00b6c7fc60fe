use huabell::cli::{execute, read_matrix_files, write_matrix_file, Cli, MatrixFile};
use huabell::kernel::bellman_counterexample_matrices;
use clap::Parser;

fn main() -> huabell::Result<()> {
    let dir = std::env::temp_dir().join(format!("huabell-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| huabell::Error::Validation(e.to_string()))?;

    let mut args = vec!["huabell".to_string(), "kernel".into(), "--alpha".into(), "0.5".into(), "--field".into(), "real".into()];
    for (i, a) in bellman_counterexample_matrices().iter().enumerate() {
        let path = dir.join(format!("a{i}.json"));
        write_matrix_file(&path, &MatrixFile::from_matrix(a, Some(format!("A{i}"))))?;
        args.extend(["--input".into(), path.display().to_string()]);
    }
    println!("{}", std::fs::read_to_string(dir.join("a0.json")).unwrap_or_default());
    println!("read back: {:?}", read_matrix_files(&dir.join("a0.json"))?[0].name);

    // same as `huabell kernel --input ... --alpha 0.5 --field real`
    let cli = Cli::try_parse_from(&args).expect("valid arguments");
    let outcome = execute(&cli)?;
    println!("{}", serde_json::to_string_pretty(&outcome.report.results["verdict"]).unwrap_or_default());
    println!("{}", outcome.report.to_csv()?.lines().filter(|l| l.starts_with("results.m")).collect::<Vec<_>>().join("\n"));
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
