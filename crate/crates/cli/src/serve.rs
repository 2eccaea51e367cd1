//! Static file server for a bundle directory plus optional viewer assets.

use std::fs;
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;
use std::thread;

use anyhow::{Context, Result};
use clap::Args;
use percent_encoding::percent_decode_str;
use serde_json::json;
use tiny_http::{Header, Method, Request, Response, Server};

use crate::Environment;

const WORKERS: usize = 4;

#[derive(Args)]
pub struct ServeArgs {
    /// Bundle directory to serve.
    #[arg(long, alias = "out")]
    bundle: PathBuf,
    /// Viewer build directory; served after bundle files.
    #[arg(long)]
    assets: Option<PathBuf>,
    /// TCP port; 0 picks a free one.
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Interface to bind.
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
}

const FALLBACK_INDEX: &str = r#"<!doctype html>
<html lang="pt-BR">
<head><meta charset="utf-8"><title>netboard</title></head>
<body>
<h1 id="title">netboard</h1>
<p>No viewer assets were given; listing the dashboard objects.</p>
<ol id="objects"></ol>
<script>
fetch("dashboard.json").then(r => r.json()).then(d => {
  document.getElementById("title").textContent = d.domain;
  const list = document.getElementById("objects");
  for (const o of d.objects) {
    const li = document.createElement("li");
    li.textContent = `${o.title} (${o.viz})`;
    list.appendChild(li);
  }
});
</script>
</body>
</html>
"#;

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => "application/json",
        Some("csv") => "text/csv; charset=utf-8",
        Some("html") => "text/html; charset=utf-8",
        Some("js" | "mjs") => "text/javascript; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        _ => "application/octet-stream",
    }
}

/// Relative path for a request URL, or `None` if it tries to leave the root.
fn relative_path(url: &str) -> Option<PathBuf> {
    let path = url.split(['?', '#']).next().unwrap_or("");
    let decoded = percent_decode_str(path).decode_utf8().ok()?;
    let rel = PathBuf::from(decoded.trim_start_matches('/'));
    rel.components()
        .all(|c| matches!(c, Component::Normal(_)))
        .then_some(rel)
}

struct Roots {
    bundle: PathBuf,
    assets: Option<PathBuf>,
}

impl Roots {
    fn find(&self, rel: &Path) -> Option<PathBuf> {
        std::iter::once(&self.bundle)
            .chain(self.assets.as_ref())
            .map(|root| root.join(rel))
            .find(|p| p.is_file())
    }
}

fn header(name: &str, value: &str) -> Header {
    Header::from_bytes(name, value).expect("static header")
}

fn respond(request: Request, roots: &Roots) {
    let reply = |status: u16, body: Vec<u8>, ctype: &str| {
        Response::from_data(body)
            .with_status_code(status)
            .with_header(header("Content-Type", ctype))
    };
    let response = if !matches!(request.method(), Method::Get | Method::Head) {
        reply(
            405,
            b"method not allowed\n".to_vec(),
            "text/plain; charset=utf-8",
        )
    } else {
        match relative_path(request.url()) {
            None => reply(403, b"forbidden\n".to_vec(), "text/plain; charset=utf-8"),
            Some(rel) if rel.as_os_str().is_empty() => match roots.find(Path::new("index.html")) {
                Some(p) => match fs::read(&p) {
                    Ok(body) => reply(200, body, content_type(&p)),
                    Err(_) => reply(500, b"read error\n".to_vec(), "text/plain; charset=utf-8"),
                },
                None => reply(
                    200,
                    FALLBACK_INDEX.as_bytes().to_vec(),
                    "text/html; charset=utf-8",
                ),
            },
            Some(rel) => match roots.find(&rel) {
                Some(p) => match fs::read(&p) {
                    Ok(body) => reply(200, body, content_type(&p)),
                    Err(_) => reply(500, b"read error\n".to_vec(), "text/plain; charset=utf-8"),
                },
                None => reply(404, b"not found\n".to_vec(), "text/plain; charset=utf-8"),
            },
        }
    };
    log::info!(
        "{} {} -> {}",
        request.method(),
        request.url(),
        response.status_code().0
    );
    if let Err(e) = request.respond(response) {
        log::warn!("response failed: {e}");
    }
}

pub fn run(args: &ServeArgs) -> Result<()> {
    if !args.bundle.is_dir() {
        anyhow::bail!("bundle directory {} does not exist", args.bundle.display());
    }
    let server = Server::http((args.host.as_str(), args.port))
        .map_err(|e| anyhow::anyhow!("{e}"))
        .context(Environment)
        .with_context(|| format!("cannot listen on {}:{}", args.host, args.port))?;
    let addr = server
        .server_addr()
        .to_ip()
        .map(|a| a.to_string())
        .unwrap_or_else(|| format!("{}:{}", args.host, args.port));
    println!(
        "{}",
        json!({"url": format!("http://{addr}/"), "bundle": args.bundle.display().to_string()})
    );
    eprintln!(
        "serving {} on http://{addr}/ (Ctrl-C to stop)",
        args.bundle.display()
    );

    let server = Arc::new(server);
    let roots = Arc::new(Roots {
        bundle: args.bundle.clone(),
        assets: args.assets.clone(),
    });
    let workers: Vec<_> = (0..WORKERS)
        .map(|_| {
            let server = Arc::clone(&server);
            let roots = Arc::clone(&roots);
            thread::spawn(move || {
                for request in server.incoming_requests() {
                    respond(request, &roots);
                }
            })
        })
        .collect();
    for w in workers {
        let _ = w.join();
    }
    Ok(())
}
