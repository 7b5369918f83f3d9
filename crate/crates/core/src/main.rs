use qslide::slide::interrupt_flag;
use std::sync::atomic::Ordering;

fn main() -> anyhow::Result<()> {
    ctrlc::set_handler(|| interrupt_flag().store(true, Ordering::SeqCst))?;
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = qslide::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
