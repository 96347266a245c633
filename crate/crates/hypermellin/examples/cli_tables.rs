// The command-line front end, driven in-process.
fn main() {
    let runs: [&[&str]; 3] = [
        &["hypermellin", "eval", "--kind", "laplace", "--a", "0.6,1.2", "--b", "0.9,1.8", "--z", "3,1+1j"],
        &["hypermellin", "weight", "--a", "1", "--b", "2", "--grid", "3", "--format", "json"],
        &["hypermellin", "ifs", "--a", "1", "--b", "2", "--w", "-1"],
    ];
    for args in runs {
        let code = hypermellin::cli::run(args.iter().copied());
        println!("exit {code}\n");
    }
}
