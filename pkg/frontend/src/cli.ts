#!/usr/bin/env node
/**
 * CLI: resolve checkpoint lists and export activation matrices.
 *
 * Exit codes mirror the estimation toolkit: 0 success, 2 configuration
 * error, 3 data error.
 */

import { parseArgs } from 'util';

import { exportActivations, WeightMode } from './exporter';
import { ConfigurationError, DataError, knownModels, resolveCheckpoints } from './models';

const USAGE = `usage:
  activation-exporter resolve-checkpoints <model>
  activation-exporter export --model <id> --out <dir>
      [--samples N] [--seed N] [--mode untrained|pretrained] [--weights FILE]

models: ${knownModels().join(', ')}
`;

function cmdResolve(args: string[]): void {
  const model = args[0];
  if (!model || args.length > 1) {
    throw new ConfigurationError('resolve-checkpoints takes exactly one model id');
  }
  const arch = resolveCheckpoints(model);
  process.stdout.write(
    JSON.stringify(
      {
        network_name: arch.modelId,
        total_layers: arch.totalLayers,
        checkpoints: arch.checkpoints,
      },
      null,
      2,
    ) + '\n',
  );
}

async function cmdExport(args: string[]): Promise<void> {
  let values;
  try {
    ({ values } = parseArgs({
      args,
      options: {
        model: { type: 'string' },
        samples: { type: 'string', default: '2000' },
        out: { type: 'string' },
        seed: { type: 'string', default: '0' },
        mode: { type: 'string', default: 'untrained' },
        weights: { type: 'string' },
      },
    }));
  } catch (err) {
    throw new ConfigurationError((err as Error).message);
  }
  if (!values.model || !values.out) {
    throw new ConfigurationError('export needs --model and --out');
  }
  if (values.mode !== 'untrained' && values.mode !== 'pretrained') {
    throw new ConfigurationError(`--mode must be untrained or pretrained, got '${values.mode}'`);
  }
  const samples = Number(values.samples);
  const seed = Number(values.seed);
  if (!Number.isInteger(samples) || !Number.isInteger(seed)) {
    throw new ConfigurationError('--samples and --seed must be integers');
  }
  const manifest = await exportActivations({
    modelId: values.model,
    totalSamples: samples,
    outDir: values.out,
    seed,
    mode: values.mode as WeightMode,
    weightsPath: values.weights,
  });
  process.stdout.write(`wrote ${manifest}\n`);
}

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  try {
    if (command === 'resolve-checkpoints') {
      cmdResolve(rest);
    } else if (command === 'export') {
      await cmdExport(rest);
    } else {
      process.stderr.write(USAGE);
      return 2;
    }
    return 0;
  } catch (err) {
    if (err instanceof ConfigurationError || err instanceof DataError) {
      process.stderr.write(`error: ${err.message}\n`);
      return err.exitCode;
    }
    throw err;
  }
}

if (require.main === module) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
