/**
 * Minimal NPY v1.0 writer/reader for 2-D float32/float64 matrices.
 *
 * The format: 6-byte magic "\x93NUMPY", version bytes 1.0, a
 * little-endian uint16 header length, then an ASCII Python-dict header
 * padded with spaces to a 64-byte boundary (newline-terminated),
 * followed by the raw C-order array bytes.
 */

export type Dtype = 'float32' | 'float64';

const MAGIC = Buffer.from('\x93NUMPY', 'latin1');

const DESCR: Record<Dtype, string> = {
  float32: '<f4',
  float64: '<f8',
};

export function serializeMatrix(
  data: Float32Array | Float64Array,
  rows: number,
  cols: number,
): Buffer {
  if (rows * cols !== data.length) {
    throw new Error(`shape ${rows}x${cols} does not match length ${data.length}`);
  }
  const dtype: Dtype = data instanceof Float32Array ? 'float32' : 'float64';
  let header = `{'descr': '${DESCR[dtype]}', 'fortran_order': False, 'shape': (${rows}, ${cols}), }`;
  // pad so that magic(6) + version(2) + hlen(2) + header is a multiple of 64
  const unpadded = MAGIC.length + 2 + 2 + header.length + 1; // +1 newline
  const pad = (64 - (unpadded % 64)) % 64;
  header = header + ' '.repeat(pad) + '\n';

  const head = Buffer.alloc(MAGIC.length + 2 + 2 + header.length);
  MAGIC.copy(head, 0);
  head[6] = 1; // major version
  head[7] = 0; // minor version
  head.writeUInt16LE(header.length, 8);
  head.write(header, 10, 'latin1');

  const body = Buffer.from(data.buffer, data.byteOffset, data.byteLength);
  return Buffer.concat([head, body]);
}

export interface Matrix {
  data: Float32Array | Float64Array;
  rows: number;
  cols: number;
}

/** Parse an NPY v1.x buffer holding a little-endian 2-D float matrix. */
export function parseMatrix(buf: Buffer): Matrix {
  if (!buf.subarray(0, 6).equals(MAGIC)) {
    throw new Error('not an NPY file (bad magic)');
  }
  const headerLen = buf.readUInt16LE(8);
  const header = buf.toString('latin1', 10, 10 + headerLen);
  const descr = /'descr':\s*'([^']+)'/.exec(header)?.[1];
  const fortran = /'fortran_order':\s*(True|False)/.exec(header)?.[1];
  const shape = /'shape':\s*\((\d+),\s*(\d+)\s*,?\s*\)/.exec(header);
  if (!descr || !fortran || !shape) {
    throw new Error(`unparseable NPY header: ${header.trim()}`);
  }
  if (fortran !== 'False') {
    throw new Error('fortran-order NPY not supported');
  }
  const rows = parseInt(shape[1], 10);
  const cols = parseInt(shape[2], 10);
  const body = buf.subarray(10 + headerLen);
  // copy so the typed array is aligned regardless of the buffer offset
  const bytes = Uint8Array.prototype.slice.call(body);
  let data: Float32Array | Float64Array;
  if (descr === '<f4') {
    data = new Float32Array(bytes.buffer, 0, rows * cols);
  } else if (descr === '<f8') {
    data = new Float64Array(bytes.buffer, 0, rows * cols);
  } else {
    throw new Error(`unsupported dtype ${descr} (expected <f4 or <f8)`);
  }
  return { data, rows, cols };
}
