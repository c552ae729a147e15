//! `pqdecomp` binary.

fn main() {
    std::process::exit(pqdecomp::run(std::env::args_os()));
}
