use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = stark_ep_lab::cli::Args::parse();
    std::process::exit(stark_ep_lab::cli::main(&args));
}
