//! Drives the command-line front end in-process, writing into a temporary
//! directory.
//!
//! ```bash
//! cargo run --example cli
//! ```

use twogirth::cli::main_with_args;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let y = dir.path().join("y.json");
    let census = dir.path().join("census.csv");
    let y = y.to_str().unwrap();
    let census = census.to_str().unwrap();

    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "--n", "10", "--p", "0.4", "--seed", "1", "--out", y],
        vec!["girth", "--input", y],
        vec!["fill", "--input", y, "--triangle", "0,1,2"],
        vec!["census", "--f-max", "4", "--out", census],
        vec!["gen", "--n", "10", "--p", "0.4"],
    ];
    for args in runs {
        println!("$ twogirth {}", args.join(" "));
        let code = main_with_args(std::iter::once("twogirth").chain(args));
        println!("exit {code}\n");
    }
    println!("{}", std::fs::read_to_string(census).unwrap());
}
