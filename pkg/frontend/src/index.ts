export { serializeMatrix, parseMatrix } from './npy';
export type { Matrix, Dtype } from './npy';
export {
  resolveCheckpoints,
  knownModels,
  buildMiniModel,
  ConfigurationError,
  DataError,
} from './models';
export type { Architecture, Checkpoint } from './models';
export { exportActivations, selectSamples, loadPixels } from './exporter';
export type { ExportJob, SampleRef, WeightMode } from './exporter';
