/** Build a fixture index with the jbender CLI and serve it for the tests.
 *
 * Talks to the backend only through its external interfaces: the CLI
 * subcommands and the HTTP API.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";

import { BASE_URL, SERVER_PORT } from "./config.js";

const REPO_ROOT = resolve(__dirname, "..", "..");
const META = join(REPO_ROOT, "tests", "data", "meta_fixture");
const CORPUS = join(REPO_ROOT, "tests", "data", "corpus_fixture");
const PROJECTS = ["junit", "coltk", "textutils"];

let server: ChildProcess | null = null;
let workDir = "";

function run(args: string[]): void {
  const result = spawnSync("python3", ["-m", "jbender.cli", ...args], {
    encoding: "utf-8",
  });
  if (result.status !== 0) {
    throw new Error(
      `jbender ${args.join(" ")} failed (${result.status}):\n${result.stderr}`,
    );
  }
}

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE_URL}/api/rankings/projects?top=1`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolveSleep) => setTimeout(resolveSleep, 150));
  }
  throw new Error("fixture server did not come up");
}

export default async function setup(): Promise<() => Promise<void>> {
  workDir = mkdtempSync(join(tmpdir(), "jbender-ui-"));
  const indexDir = join(workDir, "index");

  run(["ingest", "--meta", META, "--out", indexDir]);
  for (const project of PROJECTS) {
    run(["index", "--src", join(CORPUS, project), "--project", project, "--out", indexDir]);
  }

  server = spawn(
    "python3",
    ["-m", "jbender.cli", "serve", "--index", indexDir, "--port", String(SERVER_PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();

  return async () => {
    server?.kill("SIGTERM");
    await new Promise((resolveSleep) => setTimeout(resolveSleep, 300));
    server?.kill("SIGKILL");
    rmSync(workDir, { recursive: true, force: true });
  };
}
