/**
 * Batch figure renderer: `node dist/cli.js jobs.json`
 *
 * The job list is a JSON array of FigureJob objects; every job is validated
 * before any rendering starts, then rendered in order.
 */

import { readFileSync } from "node:fs";

import { FigureJob, render, validateJob } from "./jobs.js";

export function main(argv: string[]): number {
  if (argv.length !== 1) {
    console.error("usage: node dist/cli.js <jobs.json>");
    return 2;
  }
  let jobs: FigureJob[];
  try {
    const parsed = JSON.parse(readFileSync(argv[0], "utf8"));
    if (!Array.isArray(parsed)) throw new Error("job list must be a JSON array");
    jobs = parsed as FigureJob[];
    jobs.forEach(validateJob);
  } catch (err) {
    console.error(`invalid job list: ${(err as Error).message}`);
    return 2;
  }
  for (const job of jobs) {
    try {
      render(job);
      console.log(`rendered ${job.kind} -> ${job.output}`);
    } catch (err) {
      console.error(`failed ${job.kind} (${job.input}): ${(err as Error).message}`);
      return 1;
    }
  }
  return 0;
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
