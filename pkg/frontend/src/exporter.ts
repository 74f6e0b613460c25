/**
 * Activation export: run a seeded sample of MNIST digits through a
 * model and write one NPY matrix per checkpoint plus a manifest the
 * estimation toolkit's `profile` command consumes directly.
 *
 * Row order is fixed once per job (seeded, balanced across the ten
 * digit classes) and identical in every exported matrix; a
 * `row_indices.json` sidecar records the sample identity of each row.
 * Re-running a job with the same seed reproduces every output byte.
 */

import * as fs from 'fs';
import * as path from 'path';

import * as tf from '@tensorflow/tfjs';
import seedrandom from 'seedrandom';

import { buildMiniModel, ConfigurationError, DataError, resolveCheckpoints } from './models';
import { serializeMatrix } from './npy';

export type WeightMode = 'untrained' | 'pretrained';

export interface ExportJob {
  modelId: string;
  totalSamples: number;
  outDir: string;
  seed: number;
  mode: WeightMode;
  /** tfjs LayersModel JSON path, required in pretrained mode. */
  weightsPath?: string;
  batchSize?: number;
}

export interface SampleRef {
  digit: number;
  index: number; // position within that digit's bundled image list
}

/**
 * Deterministic balanced sample: ceil(total/10) candidates per digit in
 * bundled order, seeded Fisher-Yates shuffle, first `total` kept.
 */
export function selectSamples(totalSamples: number, seed: number): SampleRef[] {
  if (totalSamples < 1) {
    throw new ConfigurationError(`totalSamples must be >= 1, got ${totalSamples}`);
  }
  // lazy import: the dataset module loads ~10MB of bundled JSON
  const mnist = require('mnist');
  const perClass = Math.ceil(totalSamples / 10);
  const refs: SampleRef[] = [];
  for (let digit = 0; digit < 10; digit++) {
    const available: number = mnist[digit].length;
    if (perClass > available) {
      throw new DataError(
        `digit ${digit} has only ${available} bundled images, need ${perClass}`,
      );
    }
    for (let index = 0; index < perClass; index++) {
      refs.push({ digit, index });
    }
  }
  const rng = seedrandom(`sample-order:${seed}`);
  for (let i = refs.length - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [refs[i], refs[j]] = [refs[j], refs[i]];
  }
  return refs.slice(0, totalSamples);
}

/**
 * Raw pixels for the selected samples, one row per image, unit scale
 * [0, 1]. Unreadable images are skipped with a single summary line on
 * stderr; `refs` is trimmed in place to the usable rows.
 */
export function loadPixels(refs: SampleRef[]): Float32Array {
  const mnist = require('mnist');
  const rows: number[][] = [];
  const kept: SampleRef[] = [];
  for (const ref of refs) {
    const image: number[] = mnist[ref.digit].get(ref.index);
    if (!image || image.length !== 784) {
      continue;
    }
    rows.push(image);
    kept.push(ref);
  }
  const skipped = refs.length - kept.length;
  if (skipped > 0) {
    process.stderr.write(`skipped ${skipped} unreadable image(s)\n`);
  }
  if (rows.length === 0) {
    throw new DataError('no usable images in the selection');
  }
  refs.length = 0;
  refs.push(...kept);
  const out = new Float32Array(rows.length * 784);
  rows.forEach((row, r) => out.set(row, r * 784));
  return out;
}

async function loadModel(job: ExportJob): Promise<tf.LayersModel> {
  if (job.mode === 'untrained') {
    return buildMiniModel(job.seed);
  }
  if (!job.weightsPath) {
    throw new ConfigurationError(
      'pretrained mode needs --weights pointing at a tfjs LayersModel JSON',
    );
  }
  if (!fs.existsSync(job.weightsPath)) {
    throw new DataError(`${job.weightsPath}: no such file`);
  }
  return tf.loadLayersModel(`file://${path.resolve(job.weightsPath)}`);
}

/** Run the job; returns the manifest path. */
export async function exportActivations(job: ExportJob): Promise<string> {
  const arch = resolveCheckpoints(job.modelId);
  if (!arch.buildable) {
    throw new ConfigurationError(
      `model '${job.modelId}' is catalog-only; only buildable models can export ` +
        '(use resolve-checkpoints to inspect it)',
    );
  }
  const refs = selectSamples(job.totalSamples, job.seed);
  const pixels = loadPixels(refs);
  const n = refs.length;
  fs.mkdirSync(job.outDir, { recursive: true });

  // checkpoint 0: raw flattened input
  const files: { name: string; matrix: Float32Array; d: number }[] = [
    { name: 'input', matrix: pixels, d: 784 },
  ];

  const model = await loadModel(job);
  const tapped = arch.checkpoints.filter((c) => c.name !== 'input');
  const buffers = tapped.map((c) => new Float32Array(n * c.d_embed));
  const batch = job.batchSize ?? 200;
  for (let start = 0; start < n; start += batch) {
    const stop = Math.min(start + batch, n);
    const outputs = tf.tidy(() => {
      const x = tf.tensor(pixels.subarray(start * 784, stop * 784), [stop - start, 28, 28, 1]);
      const y = model.predict(x) as tf.Tensor[];
      return y.map((t) => t.dataSync() as Float32Array);
    });
    outputs.forEach((chunk, t) => {
      buffers[t].set(chunk, start * tapped[t].d_embed);
    });
  }
  tapped.forEach((c, t) => files.push({ name: c.name, matrix: buffers[t], d: c.d_embed }));

  const manifest = {
    network_name: `${job.modelId}-${job.mode}`,
    total_layers: arch.totalLayers,
    checkpoints: arch.checkpoints.map((c) => ({
      name: c.name,
      order_index: c.order_index,
      d_embed: c.d_embed,
      matrix_path: `${c.name}.npy`,
    })),
  };

  for (const f of files) {
    fs.writeFileSync(path.join(job.outDir, `${f.name}.npy`), serializeMatrix(f.matrix, n, f.d));
  }
  const manifestPath = path.join(job.outDir, 'manifest.json');
  fs.writeFileSync(manifestPath, JSON.stringify(manifest, null, 2) + '\n');
  fs.writeFileSync(
    path.join(job.outDir, 'row_indices.json'),
    JSON.stringify({ seed: job.seed, rows: refs }, null, 2) + '\n',
  );
  return manifestPath;
}
