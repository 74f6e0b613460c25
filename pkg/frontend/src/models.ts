/**
 * Architecture catalog and the checkpoint rule.
 *
 * A checkpoint is taken at the flattened input, at every pooling layer
 * that closes a convolutional block, and at every fully connected
 * hidden layer; for residual architectures, after each residual block
 * and at the global average pooling before the classifier. The final
 * classifier output is never a checkpoint. `order_index` is the
 * position of the checkpoint's source layer among the weight layers
 * (convolutions and dense layers; normalization layers do not count),
 * so `order_index / total_layers` is the relative depth.
 */

import * as tf from '@tensorflow/tfjs';

export class ConfigurationError extends Error {
  readonly exitCode = 2;
}

export class DataError extends Error {
  readonly exitCode = 3;
}

export interface Checkpoint {
  name: string;
  order_index: number;
  d_embed: number;
}

export interface Architecture {
  modelId: string;
  totalLayers: number; // weight layers: conv + dense
  inputShape: [number, number, number]; // height, width, channels
  checkpoints: Checkpoint[]; // includes the input checkpoint at order 0
  /** Only small architectures are instantiable for export. */
  buildable: boolean;
}

interface ConvSpec {
  blocks: number[][]; // filters per conv, one inner array per pooled block
  denseHidden: number[];
  classes: number;
}

function vggLike(
  modelId: string,
  input: [number, number, number],
  spec: ConvSpec,
  buildable: boolean,
): Architecture {
  const [h0, w0] = input;
  const checkpoints: Checkpoint[] = [
    { name: 'input', order_index: 0, d_embed: input[0] * input[1] * input[2] },
  ];
  let layer = 0;
  let h = h0;
  let w = w0;
  for (let b = 0; b < spec.blocks.length; b++) {
    layer += spec.blocks[b].length;
    h = Math.ceil(h / 2);
    w = Math.ceil(w / 2);
    const filters = spec.blocks[b][spec.blocks[b].length - 1];
    checkpoints.push({
      name: `pool${b + 1}`,
      order_index: layer,
      d_embed: h * w * filters,
    });
  }
  for (let i = 0; i < spec.denseHidden.length; i++) {
    layer += 1;
    checkpoints.push({
      name: `fc${i + 1}`,
      order_index: layer,
      d_embed: spec.denseHidden[i],
    });
  }
  layer += 1; // classifier head, not a checkpoint
  return { modelId, totalLayers: layer, inputShape: input, checkpoints, buildable };
}

function resnetLike(
  modelId: string,
  input: [number, number, number],
  stageFilters: number[],
  blocksPerStage: number,
): Architecture {
  const checkpoints: Checkpoint[] = [
    { name: 'input', order_index: 0, d_embed: input[0] * input[1] * input[2] },
  ];
  let layer = 1; // stem convolution
  let h = Math.floor(input[0] / 2); // stem stride 2
  let w = Math.floor(input[1] / 2);
  let block = 0;
  for (let s = 0; s < stageFilters.length; s++) {
    if (s > 0) {
      h = Math.floor(h / 2);
      w = Math.floor(w / 2);
    }
    for (let b = 0; b < blocksPerStage; b++) {
      layer += 2; // two convolutions per basic block
      block += 1;
      checkpoints.push({
        name: `block${block}`,
        order_index: layer,
        d_embed: h * w * stageFilters[s],
      });
    }
  }
  checkpoints.push({ name: 'avgpool', order_index: layer, d_embed: stageFilters[stageFilters.length - 1] });
  layer += 1; // classifier head
  return { modelId, totalLayers: layer, inputShape: input, checkpoints, buildable: false };
}

const CATALOG: Record<string, Architecture> = {
  // classic 16-weight-layer configuration: 13 convolutions in 5 pooled
  // blocks plus 3 dense layers (2 hidden + classifier)
  vgg16: vggLike(
    'vgg16',
    [224, 224, 3],
    {
      blocks: [
        [64, 64],
        [128, 128],
        [256, 256, 256],
        [512, 512, 512],
        [512, 512, 512],
      ],
      denseHidden: [4096, 4096],
      classes: 1000,
    },
    false,
  ),
  // same shape at digit scale: 5 pooled single-conv blocks + 2 dense
  // hidden layers; small enough to run forward passes on the CPU
  'vgg-mini': vggLike(
    'vgg-mini',
    [28, 28, 1],
    {
      blocks: [[8], [16], [32], [64], [64]],
      denseHidden: [64, 32],
      classes: 10,
    },
    true,
  ),
  resnet18: resnetLike('resnet18', [224, 224, 3], [64, 128, 256, 512], 2),
  // degenerate catalog entry: convolutions only, no pooling, no hidden
  // dense layers -- the checkpoint rule yields nothing to export
  'conv-plain': {
    modelId: 'conv-plain',
    totalLayers: 3,
    inputShape: [28, 28, 1],
    checkpoints: [],
    buildable: false,
  },
};

export function knownModels(): string[] {
  return Object.keys(CATALOG);
}

export function resolveCheckpoints(modelId: string): Architecture {
  const arch = CATALOG[modelId];
  if (!arch) {
    throw new ConfigurationError(
      `unknown model '${modelId}'; known models: ${knownModels().join(', ')}`,
    );
  }
  if (arch.checkpoints.length === 0) {
    throw new ConfigurationError(
      `model '${modelId}' has no pooling or dense hidden layers; nothing to export`,
    );
  }
  return arch;
}

const MINI_SPEC: ConvSpec = {
  blocks: [[8], [16], [32], [64], [64]],
  denseHidden: [64, 32],
  classes: 10,
};

/**
 * Instantiate `vgg-mini` as a functional model whose outputs are the
 * flattened activation at every checkpoint (input excluded: the caller
 * already holds the raw pixels), in checkpoint order.
 */
export function buildMiniModel(seed: number): tf.LayersModel {
  const init = (offset: number) =>
    tf.initializers.glorotUniform({ seed: seed + offset });
  const input = tf.input({ shape: MINI_SPEC.blocks.length ? [28, 28, 1] : [784] });
  let x = input;
  const taps: tf.SymbolicTensor[] = [];
  let layerNo = 0;
  for (let b = 0; b < MINI_SPEC.blocks.length; b++) {
    for (const filters of MINI_SPEC.blocks[b]) {
      layerNo += 1;
      x = tf.layers
        .conv2d({
          filters,
          kernelSize: 3,
          padding: 'same',
          activation: 'relu',
          kernelInitializer: init(layerNo),
          name: `conv${layerNo}`,
        })
        .apply(x) as tf.SymbolicTensor;
    }
    x = tf.layers
      .maxPooling2d({ poolSize: 2, padding: 'same', name: `pool${b + 1}` })
      .apply(x) as tf.SymbolicTensor;
    taps.push(
      tf.layers
        .flatten({ name: `pool${b + 1}_flat` })
        .apply(x) as tf.SymbolicTensor,
    );
  }
  x = tf.layers.flatten({ name: 'flat' }).apply(x) as tf.SymbolicTensor;
  for (let i = 0; i < MINI_SPEC.denseHidden.length; i++) {
    layerNo += 1;
    x = tf.layers
      .dense({
        units: MINI_SPEC.denseHidden[i],
        activation: 'relu',
        kernelInitializer: init(layerNo),
        name: `fc${i + 1}`,
      })
      .apply(x) as tf.SymbolicTensor;
    taps.push(x);
  }
  return tf.model({ inputs: input, outputs: taps });
}
