use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("REGCOVER_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // ignore failure: a global pool may already exist
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = regcover::cli::dispatch(std::env::args());
    match &result.payload {
        serde_json::Value::String(text) => println!("{text}"),
        json => println!("{json}"),
    }
    ExitCode::from(result.exit_code as u8)
}
