//! The asymmetric streaming model: a random-access text, a one-way character
//! stream, and a cooperative meter for algorithm state.
//!
//! All text positions are 1-based. A [`TextOracle`] counts every character
//! query it serves; a [`CharStream`] counts how many passes have been started
//! over it. Algorithms register the machine words they keep alive with a
//! [`SpaceMeter`], which makes "constant memory" an assertable property.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{contract, Error, Result};

/// Random access to a string by 1-based character queries.
pub trait TextAccess {
    fn len(&self) -> usize;

    /// Returns the `i`-th character, `1 <= i <= len()`.
    fn read(&self, i: usize) -> Result<u8>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<A: TextAccess + ?Sized> TextAccess for &A {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn read(&self, i: usize) -> Result<u8> {
        (**self).read(i)
    }
}

/// Pages kept by a file-backed oracle.
const FILE_PAGES: usize = 4;
/// Bytes per page of a file-backed oracle.
const PAGE_BYTES: usize = 16;

/// Random-access view of the offline string.
///
/// Either holds the bytes in memory or serves them from a file through a
/// small fixed page cache. Safe to share between threads.
pub struct TextOracle {
    backing: Backing,
    len: usize,
    reads: AtomicU64,
}

enum Backing {
    Memory(Vec<u8>),
    File(Mutex<PagedFile>),
}

impl TextOracle {
    /// Wraps an in-memory byte string.
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        let bytes = bytes.into();
        TextOracle {
            len: bytes.len(),
            backing: Backing::Memory(bytes),
            reads: AtomicU64::new(0),
        }
    }

    /// Opens a file and serves reads by seeking. Only a constant number of
    /// bytes are resident at any time (see [`TextOracle::buffer_words`]).
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let file = File::open(path)?;
        let len = usize::try_from(file.metadata()?.len())
            .map_err(|_| Error::Io(io::Error::other("file too large")))?;
        Ok(TextOracle {
            backing: Backing::File(Mutex::new(PagedFile::new(file))),
            len,
            reads: AtomicU64::new(0),
        })
    }

    /// Reads a whole file into memory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::from_bytes(std::fs::read(path)?))
    }

    /// Number of character queries served so far.
    pub fn reads_performed(&self) -> u64 {
        self.reads.load(Ordering::Relaxed)
    }

    /// Words of read buffer this oracle keeps resident. Zero for in-memory
    /// text, which is the input itself rather than algorithm state.
    pub fn buffer_words(&self) -> usize {
        match self.backing {
            Backing::Memory(_) => 0,
            Backing::File(_) => FILE_PAGES * PAGE_BYTES / 8,
        }
    }

    /// Visits every character once, in order. Counts as `len()` reads.
    pub fn scan(&self, mut f: impl FnMut(u8)) -> Result<()> {
        match &self.backing {
            Backing::Memory(bytes) => {
                self.reads.fetch_add(bytes.len() as u64, Ordering::Relaxed);
                bytes.iter().for_each(|&b| f(b));
            }
            Backing::File(_) => {
                for i in 1..=self.len {
                    f(self.read(i)?);
                }
            }
        }
        Ok(())
    }
}

impl TextAccess for TextOracle {
    fn len(&self) -> usize {
        self.len
    }

    #[inline]
    fn read(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange { index: i, len: self.len });
        }
        self.reads.fetch_add(1, Ordering::Relaxed);
        match &self.backing {
            Backing::Memory(bytes) => Ok(bytes[i - 1]),
            Backing::File(paged) => {
                let mut paged = paged.lock().unwrap_or_else(|e| e.into_inner());
                paged.byte_at(i - 1)
            }
        }
    }
}

impl std::fmt::Debug for TextOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.backing {
            Backing::Memory(_) => "memory",
            Backing::File(_) => "file",
        };
        f.debug_struct("TextOracle")
            .field("len", &self.len)
            .field("backing", &kind)
            .field("reads", &self.reads_performed())
            .finish()
    }
}

struct Page {
    start: u64,
    len: usize,
    last_used: u64,
    data: [u8; PAGE_BYTES],
}

struct PagedFile {
    file: File,
    pages: [Page; FILE_PAGES],
    clock: u64,
}

impl PagedFile {
    fn new(file: File) -> Self {
        PagedFile {
            file,
            pages: std::array::from_fn(|_| Page {
                start: u64::MAX,
                len: 0,
                last_used: 0,
                data: [0; PAGE_BYTES],
            }),
            clock: 0,
        }
    }

    fn byte_at(&mut self, offset: usize) -> Result<u8> {
        let offset = offset as u64;
        let start = offset - offset % PAGE_BYTES as u64;
        self.clock += 1;
        let clock = self.clock;
        if let Some(page) = self.pages.iter_mut().find(|p| p.start == start) {
            page.last_used = clock;
            return page_byte(page, offset);
        }
        // Least recently used page is replaced.
        let victim = self
            .pages
            .iter_mut()
            .min_by_key(|p| p.last_used)
            .expect("FILE_PAGES > 0");
        self.file.seek(SeekFrom::Start(start))?;
        let mut filled = 0;
        while filled < PAGE_BYTES {
            match self.file.read(&mut victim.data[filled..]) {
                Ok(0) => break,
                Ok(k) => filled += k,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e.into()),
            }
        }
        victim.start = start;
        victim.len = filled;
        victim.last_used = clock;
        page_byte(victim, offset)
    }
}

fn page_byte(page: &Page, offset: u64) -> Result<u8> {
    let idx = (offset - page.start) as usize;
    if idx < page.len {
        Ok(page.data[idx])
    } else {
        Err(Error::Io(io::Error::new(
            io::ErrorKind::UnexpectedEof,
            "text file shrank while open",
        )))
    }
}

/// One-way character source for the streamed string.
///
/// Passes are counted: the stream starts in pass 1 and every
/// [`CharStream::rewind`] starts a new one. Standard input cannot be
/// rewound.
pub struct CharStream {
    source: Source,
    position: u64,
    passes_started: u32,
}

enum Source {
    Memory { data: Vec<u8>, cursor: usize },
    File(BufReader<File>),
    Reader(BufReader<Box<dyn Read + Send>>),
}

impl CharStream {
    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Self::with_source(Source::Memory {
            data: bytes.into(),
            cursor: 0,
        })
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::with_source(Source::File(BufReader::new(File::open(path)?))))
    }

    /// A non-replayable stream over any reader, e.g. standard input.
    pub fn from_reader(reader: impl Read + Send + 'static) -> Self {
        Self::with_source(Source::Reader(BufReader::new(Box::new(reader))))
    }

    pub fn stdin() -> Self {
        Self::from_reader(io::stdin())
    }

    fn with_source(source: Source) -> Self {
        CharStream {
            source,
            position: 0,
            passes_started: 1,
        }
    }

    /// Next character of the current pass, or `None` at end of stream.
    pub fn next_char(&mut self) -> Result<Option<u8>> {
        let c = match &mut self.source {
            Source::Memory { data, cursor } => {
                let c = data.get(*cursor).copied();
                if c.is_some() {
                    *cursor += 1;
                }
                c
            }
            Source::File(r) => next_buffered(r)?,
            Source::Reader(r) => next_buffered(r)?,
        };
        if c.is_some() {
            self.position += 1;
        }
        Ok(c)
    }

    /// Characters delivered in the current pass.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn passes_started(&self) -> u32 {
        self.passes_started
    }

    pub fn is_replayable(&self) -> bool {
        !matches!(self.source, Source::Reader(_))
    }

    /// Restarts the stream from its first character and starts a new pass.
    pub fn rewind(&mut self) -> Result<()> {
        match &mut self.source {
            Source::Memory { cursor, .. } => *cursor = 0,
            Source::File(r) => {
                r.seek(SeekFrom::Start(0))?;
            }
            Source::Reader(_) => return Err(Error::NotReplayable),
        }
        self.position = 0;
        self.passes_started += 1;
        Ok(())
    }

    /// Consumes the rest of the current pass without looking at it.
    pub fn drain(&mut self) -> Result<()> {
        while self.next_char()?.is_some() {}
        Ok(())
    }
}

fn next_buffered<R: BufRead>(r: &mut R) -> Result<Option<u8>> {
    loop {
        match r.fill_buf() {
            Ok([]) => return Ok(None),
            Ok(buf) => {
                let c = buf[0];
                r.consume(1);
                return Ok(Some(c));
            }
            Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
}

/// Cooperative accounting of persistent algorithm state, in machine words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpaceMeter {
    current: usize,
    peak: usize,
}

impl SpaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `delta` words (negative to release). The running total may not
    /// drop below zero.
    pub fn register(&mut self, delta: isize) -> Result<()> {
        let next = self.current as isize + delta;
        if next < 0 {
            return Err(contract(format!(
                "meter would go negative: {} {:+}",
                self.current, delta
            )));
        }
        self.current = next as usize;
        self.peak = self.peak.max(self.current);
        Ok(())
    }

    pub fn charge(&mut self, words: usize) {
        self.current += words;
        self.peak = self.peak.max(self.current);
    }

    pub fn release(&mut self, words: usize) -> Result<()> {
        self.register(-(words as isize))
    }

    pub fn current_words(&self) -> usize {
        self.current
    }

    pub fn peak_words(&self) -> usize {
        self.peak
    }
}

const ABSENT: u16 = u16::MAX;

/// Injective map from the bytes of an alphabet onto `0..sigma`.
#[derive(Clone)]
pub struct AlphabetMap {
    table: [u16; 256],
    sigma: usize,
}

impl AlphabetMap {
    /// Alphabet of exactly the distinct bytes in `bytes`, ranked by value.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut present = [false; 256];
        bytes.iter().for_each(|&b| present[b as usize] = true);
        Self::from_presence(&present)
    }

    /// Alphabet of a text, built with one scan over the oracle.
    pub fn from_text(text: &TextOracle) -> Result<Self> {
        let mut present = [false; 256];
        text.scan(|b| present[b as usize] = true)?;
        Ok(Self::from_presence(&present))
    }

    /// All 256 byte values, mapped to themselves.
    pub fn full() -> Self {
        Self::from_presence(&[true; 256])
    }

    fn from_presence(present: &[bool; 256]) -> Self {
        let mut table = [ABSENT; 256];
        let mut sigma = 0;
        for (b, _) in present.iter().enumerate().filter(|(_, &p)| p) {
            table[b] = sigma as u16;
            sigma += 1;
        }
        AlphabetMap { table, sigma }
    }

    /// Alphabet size.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    pub fn index_of(&self, c: u8) -> Option<u64> {
        match self.table[c as usize] {
            ABSENT => None,
            v => Some(v as u64),
        }
    }

    pub fn contains(&self, c: u8) -> bool {
        self.table[c as usize] != ABSENT
    }
}

impl std::fmt::Debug for AlphabetMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlphabetMap").field("sigma", &self.sigma).finish()
    }
}
